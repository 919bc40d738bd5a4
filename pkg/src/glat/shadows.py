"""String modules of the doubled algebra, torsion shadows and wide shadows.

Shadows are plain frozensets of canonical words of the double; module data is
only built inside :mod:`glat.oracle`.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Optional

from .biclosed import BicLattice, J_mask
from .lattice_toolkit import FiniteLattice, inclusion_covers, psi
from .quiver_core import GlatError, double
from .strings import (
    Label,
    StringWord,
    breaks,
    label_of_string,
    lazy,
    specialize,
    str_of_label,
    str_tilde,
)


class EmptyInput(GlatError, ValueError):
    pass


Shadow = frozenset  # of canonical words of the double


# ---------------------------------------------------------------- factor strings


def _factor(w: StringWord, vs: tuple[str, ...], a: int, b: int) -> StringWord:
    return lazy(vs[a]) if a == b else StringWord(w.letters[a:b]).canonical()


@lru_cache(maxsize=65536)
def factor_occurrences(pp, w: StringWord, kind: str) -> tuple[tuple[int, int, StringWord], ...]:
    """Factor positions ``[a, b]`` of ``w`` that are quotients (``kind="quotient"``) or submodules.

    For a quotient the letters just outside the factor point away from it; for
    a submodule they point into it.
    """
    from .strings import word_vertices

    vs = word_vertices(pp, w)
    d = len(w.letters)
    out = []
    want_out = kind == "quotient"
    for a in range(d + 1):
        if a > 0:
            # letter a-1 joins v_{a-1} and v_a; direct means it maps v_a to v_{a-1}
            if w.letters[a - 1].inverse == want_out:
                continue
        for b in range(a, d + 1):
            if b < d:
                # letter b joins v_b and v_{b+1}; inverse means it maps v_b to v_{b+1}
                if w.letters[b].inverse != want_out:
                    continue
            out.append((a, b, _factor(w, vs, a, b)))
    return tuple(out)


def quotient_strings(pp, w: StringWord) -> frozenset[StringWord]:
    return frozenset(f for _, _, f in factor_occurrences(pp, w, "quotient"))


def submodule_strings(pp, w: StringWord) -> frozenset[StringWord]:
    return frozenset(f for _, _, f in factor_occurrences(pp, w, "submodule"))


def hom_dim(pp, w1: StringWord, w2: StringWord) -> int:
    """Number of graph maps: a quotient occurrence in ``w1`` matched with an equal submodule occurrence in ``w2``."""
    qs = [f for _, _, f in factor_occurrences(pp, w1, "quotient")]
    ss = [f for _, _, f in factor_occurrences(pp, w2, "submodule")]
    return sum(q == s for q in qs for s in ss)


def hom_vanishes(pp, w1: StringWord, w2: StringWord) -> bool:
    return not (quotient_strings(pp, w1) & submodule_strings(pp, w2))


def end_dim(pp, w: StringWord) -> int:
    return hom_dim(pp, w, w)


# ---------------------------------------------------------------- torsion shadows


def torsion_shadow(p, B: Iterable[StringWord]) -> Shadow:
    """Words of ``Str~(A)`` whose quotient strings all specialize into ``B``."""
    B = frozenset(B)
    pp = double(p)
    return frozenset(
        wt for wt in str_tilde(p) if all(specialize(p, q) in B for q in quotient_strings(pp, wt))
    )


def biclosed_of(p, T: Iterable[StringWord]) -> frozenset[StringWord]:
    return frozenset(specialize(p, wt) for wt in T)


# ---------------------------------------------------------------- wide shadows


def wide_shadow_of_shard(p, labels: Iterable[Label]) -> Shadow:
    return frozenset(str_of_label(p, lab) for lab in labels)


def sim(p, W: Iterable[StringWord]) -> frozenset[Label]:
    """Labels of members whose base string occurs in exactly one member's label."""
    labs = [label_of_string(p, wt) for wt in W]
    if not labs:
        raise EmptyInput("sim of an empty wide shadow")
    count: dict[StringWord, int] = {}
    for lab in labs:
        count[lab.base] = count.get(lab.base, 0) + 1
    return frozenset(lab for lab in labs if count[lab.base] == 1)


def _join_of_J(bic: BicLattice, labels: Iterable[Label]) -> int:
    mask = 0
    for lab in labels:
        mask |= J_mask(bic.p, lab)
    return bic.position[bic.ix.closure(mask)]


def shard_of_wide(bic: BicLattice, W: Iterable[StringWord]) -> frozenset[Label]:
    W = frozenset(W)
    if not W:
        return frozenset()
    return psi(bic.L, bic.lab, _join_of_J(bic, sim(bic.p, W)))


def torshad_widshad(bic: BicLattice, T: Iterable[StringWord]) -> Shadow:
    x = bic.element(biclosed_of(bic.p, T))
    return wide_shadow_of_shard(bic.p, psi(bic.L, bic.lab, x))


def widshad_torshad(bic: BicLattice, W: Iterable[StringWord]) -> Shadow:
    W = frozenset(W)
    if not W:
        return frozenset()
    return torsion_shadow(bic.p, bic.words(_join_of_J(bic, sim(bic.p, W))))


def concatenation_closure(p, gens: Iterable[StringWord]) -> Shadow:
    """Words of ``Str~(A)`` that are concatenations of one or more generators."""
    pp = double(p)
    gens = frozenset(gens)
    memo: dict[StringWord, bool] = {}

    def ok(wt: StringWord) -> bool:
        if wt not in memo:
            memo[wt] = wt in gens or any(ok(b.left) and ok(b.right) for b in breaks(pp, wt))
        return memo[wt]

    return frozenset(wt for wt in str_tilde(p) if ok(wt))


# ---------------------------------------------------------------- whole posets


@dataclass
class ShadowPosets:
    """Torsion and wide shadows of every biclosed set, with their inclusion orders."""

    bic: BicLattice

    @cached_property
    def torsion(self) -> list[Shadow]:
        return [torsion_shadow(self.bic.p, self.bic.words(x)) for x in range(len(self.bic))]

    @cached_property
    def shards(self) -> list[frozenset[Label]]:
        return [psi(self.bic.L, self.bic.lab, x) for x in range(len(self.bic))]

    @cached_property
    def wide(self) -> list[Shadow]:
        return [wide_shadow_of_shard(self.bic.p, s) for s in self.shards]

    @cached_property
    def torshad(self) -> FiniteLattice:
        return _inclusion_lattice(self.torsion)

    @cached_property
    def widshad(self) -> FiniteLattice:
        return _inclusion_lattice(self.wide)

    def unstarred_fibers(self) -> list[list[int]]:
        """Elements of ``Bic(A)`` grouped by the unstarred part of their torsion shadow."""
        groups: dict[frozenset, list[int]] = {}
        for x, T in enumerate(self.torsion):
            groups.setdefault(frozenset(w for w in T if w.is_starred_free), []).append(x)
        return sorted(groups.values())


def _shadow_key(s: frozenset):
    return (len(s), sorted(w.sort_key() for w in s))


def _inclusion_lattice(family: list[frozenset]) -> FiniteLattice:
    distinct = sorted(set(family), key=_shadow_key)
    return FiniteLattice(distinct, [(distinct[a], distinct[b]) for a, b in inclusion_covers(distinct)])


def torshad_elements(bic: BicLattice) -> list[Shadow]:
    return ShadowPosets(bic).torsion


def widshad_elements(bic: BicLattice) -> list[Shadow]:
    return ShadowPosets(bic).wide


def label_for(p, wt: StringWord) -> Optional[Label]:
    try:
        return label_of_string(p, wt)
    except GlatError:
        return None
