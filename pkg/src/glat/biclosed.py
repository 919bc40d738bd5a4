"""Closure on strings, biclosed sets and their lattice with its edge labels.

Sets of strings are bitmasks over the canonical enumeration of ``Str(A)``.
A string ``s`` is a concatenation of ``u`` and ``v`` exactly when ``{u, v}`` is
one of its breaks, so closure only needs the break table.  Because the
enumeration is ordered by length and splits are shorter than the string they
come from, one ascending pass computes a closure.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Optional

import numpy as np

from .lattice_toolkit import FiniteLattice, Labeling, is_polygonal as _is_polygonal
from .quiver_core import GentlePresentation
from .strings import Label, StringWord, all_labels, breaks, concatenations, enumerate_strings, format_word


class EnumerationMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class StringIndex:
    p: GentlePresentation
    strings: tuple[StringWord, ...]
    index: dict
    # per string: list of (left mask | right mask, left index, right index)
    break_masks: tuple[tuple[tuple[int, int, int], ...], ...]

    @property
    def n(self) -> int:
        return len(self.strings)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def mask(self, xs: Iterable[StringWord]) -> int:
        m = 0
        for x in xs:
            m |= 1 << self.index[x.canonical()]
        return m

    def words(self, mask: int) -> frozenset[StringWord]:
        return frozenset(self.strings[i] for i in range(self.n) if mask >> i & 1)

    def closure(self, mask: int) -> int:
        for s, bms in enumerate(self.break_masks):
            if not mask >> s & 1:
                for bm, _, _ in bms:
                    if mask & bm == bm:
                        mask |= 1 << s
                        break
        return mask

    def closure_violation(self, mask: int) -> Optional[int]:
        """A string outside ``mask`` with both splits of some break inside, if any."""
        for s, bms in enumerate(self.break_masks):
            if not mask >> s & 1:
                for bm, _, _ in bms:
                    if mask & bm == bm:
                        return s
        return None

    def is_closed(self, mask: int) -> bool:
        return self.closure_violation(mask) is None

    def is_biclosed(self, mask: int) -> bool:
        return self.is_closed(mask) and self.is_closed(self.full ^ mask)

    def split_mask(self, s: int) -> int:
        m = 0
        for bm, _, _ in self.break_masks[s]:
            m |= bm
        return m

    def label(self, mask: int, s: int) -> Label:
        """The label of adding string ``s`` on top of ``mask``."""
        return Label(self.strings[s], self.words(mask & self.split_mask(s)))


@lru_cache(maxsize=None)
def string_index(p: GentlePresentation) -> StringIndex:
    strings = tuple(enumerate_strings(p))
    index = {w: i for i, w in enumerate(strings)}
    bms = []
    for w in strings:
        row = []
        for b in breaks(p, w):
            li, ri = index[b.left], index[b.right]
            row.append(((1 << li) | (1 << ri), li, ri))
        bms.append(tuple(row))
    return StringIndex(p, strings, index, tuple(bms))


# ---------------------------------------------------------------- set-level API


def closure(p: GentlePresentation, xs: Iterable[StringWord]) -> frozenset[StringWord]:
    ix = string_index(p)
    return ix.words(ix.closure(ix.mask(xs)))


def is_closed(p: GentlePresentation, xs: Iterable[StringWord]) -> bool:
    ix = string_index(p)
    return ix.is_closed(ix.mask(xs))


def is_biclosed(p: GentlePresentation, xs: Iterable[StringWord]) -> bool:
    ix = string_index(p)
    return ix.is_biclosed(ix.mask(xs))


def sweep_biclosed(p: GentlePresentation) -> set[int]:
    """Every biclosed subset of ``Str(A)``, by a vectorized sweep over all subsets."""
    ix = string_index(p)
    n = ix.n
    if n > 24:
        raise ValueError(f"refusing a sweep over 2^{n} subsets")
    masks = np.arange(1 << n, dtype=np.int64)
    comp = masks ^ ix.full
    bad = np.zeros(masks.shape, dtype=bool)
    for s, bms in enumerate(ix.break_masks):
        out_m = ((masks >> s) & 1) == 0
        out_c = ~out_m
        for bm, _, _ in bms:
            bad |= ((masks & bm) == bm) & out_m
            bad |= ((comp & bm) == bm) & out_c
    return {int(m) for m in np.nonzero(~bad)[0]}


def J_mask(p: GentlePresentation, lab: Label) -> int:
    """Mask of ``J(w_D)``: the closure of ``{w}``, ``D`` and the sets ``S(u)`` for ``u`` in ``D``.

    ``S(u)`` holds the splits ``v`` of ``u`` that are not splits of ``w`` and
    do not concatenate with a member of ``D`` into a substring of ``w``.  The
    substring clause matters when ``v`` meets some ``d`` in ``D`` along an
    arrow outside ``w``; dropping ``v`` there would leave a break of ``u``
    with neither split in ``J``.
    """
    ix = string_index(p)
    w = lab.base
    w_splits = {s for b in breaks(p, w) for s in (b.left, b.right)}
    subs = _factor_table(p)[w]
    seed = {w} | set(lab.chosen)
    for u in lab.chosen:
        for b in breaks(p, u):
            for v in (b.left, b.right):
                if v in w_splits:
                    continue
                if any(c in subs for d in lab.chosen for c in concatenations(p, v, d)):
                    continue
                seed.add(v)
    return ix.closure(ix.mask(seed))


def J(p: GentlePresentation, lab: Label) -> frozenset[StringWord]:
    """The join-irreducible biclosed set attached to a label."""
    return string_index(p).words(J_mask(p, lab))


def cover_label(p: GentlePresentation, lower: Iterable[StringWord], w: StringWord) -> Label:
    ix = string_index(p)
    return ix.label(ix.mask(lower), ix.index[w.canonical()])


# ---------------------------------------------------------------- the lattice


class BicLattice:
    """``Bic(A)`` with its edge labels.

    ``L`` holds the order; ``masks[i]`` is the biclosed set of element ``i``.
    """

    def __init__(self, p: GentlePresentation, cross_check: Optional[bool] = None):
        self.p = p
        self.ix = ix = string_index(p)
        found = {0}
        frontier = [0]
        covers: list[tuple[int, int, int]] = []
        while frontier:
            nxt = []
            for B in frontier:
                for s in range(ix.n):
                    if B >> s & 1:
                        continue
                    if any(bin(B & bm).count("1") != 1 for bm, _, _ in ix.break_masks[s]):
                        continue
                    C = B | (1 << s)
                    if not ix.is_biclosed(C):
                        continue
                    covers.append((B, C, s))
                    if C not in found:
                        found.add(C)
                        nxt.append(C)
            frontier = nxt
        if cross_check is None:
            cross_check = ix.n <= 20
        if cross_check:
            swept = sweep_biclosed(p)
            if swept != found:
                extra = sorted(swept - found)[:1]
                raise EnumerationMismatch(f"subset sweep finds {len(swept)} biclosed sets, growth finds {len(found)}; "
                                          f"first unreached: {[format_word(w) for w in sorted(ix.words(extra[0]))] if extra else None}")
        self.cross_checked = bool(cross_check)
        ordered = sorted(found, key=lambda m: (bin(m).count("1"), [i for i in range(ix.n) if m >> i & 1]))
        self.L = FiniteLattice(ordered, [(a, b) for a, b, _ in covers])
        self.masks: list[int] = self.L.elements
        self.position = self.L.index
        self.added: dict[tuple[int, int], int] = {}
        self.lab: Labeling = {}
        for a, b, s in covers:
            key = (self.position[a], self.position[b])
            self.added[key] = s
            self.lab[key] = ix.label(a, s)

    # -- element access

    def __len__(self) -> int:
        return self.L.n

    @property
    def strings(self) -> tuple[StringWord, ...]:
        return self.ix.strings

    @cached_property
    def labels(self) -> tuple[Label, ...]:
        return all_labels(self.p)

    def words(self, x: int) -> frozenset[StringWord]:
        return self.ix.words(self.masks[x])

    def element(self, xs: Iterable[StringWord]) -> int:
        return self.position[self.ix.mask(xs)]

    def lambda_down(self, x: int) -> set[Label]:
        return {self.lab[(y, x)] for y in self.L.lower_covers[x]}

    def lambda_up(self, x: int) -> set[Label]:
        return {self.lab[(x, z)] for z in self.L.upper_covers[x]}

    def J(self, lab: Label) -> frozenset[StringWord]:
        return J(self.p, lab)

    def J_element(self, lab: Label) -> int:
        return self.position[J_mask(self.p, lab)]

    # -- formulas checked against the tables

    def join_formula(self, a: int, b: int) -> int:
        return self.position[self.ix.closure(self.masks[a] | self.masks[b])]

    def meet_formula(self, a: int, b: int) -> int:
        """Meet through the complement anti-automorphism."""
        full = self.ix.full
        return self.position[full ^ self.ix.closure((full ^ self.masks[a]) | (full ^ self.masks[b]))]

    def complement(self, x: int) -> int:
        return self.position[self.ix.full ^ self.masks[x]]

    # -- label order and concatenation tests

    def label_lt(self, a: Label, b: Label) -> bool:
        """Strict order on labels: the base of ``a`` is a proper substring of the base of ``b``."""
        return _proper_substring(self.p, a.base, b.base)

    def is_multi_concatenation(self, w: StringWord, pool: frozenset[StringWord]) -> bool:
        """Whether ``w`` is ``u1 g1 u2 ... g(k-1) uk`` with ``k >= 2`` and every ``ui`` in ``pool``."""
        ix = self.ix
        pm = ix.mask(pool)
        memo: dict[int, bool] = {}

        def expressible(s: int) -> bool:
            if s not in memo:
                memo[s] = bool(pm >> s & 1) or any(expressible(l) and expressible(r) for _, l, r in ix.break_masks[s])
            return memo[s]

        return any(expressible(l) and expressible(r) for _, l, r in ix.break_masks[ix.index[w.canonical()]])


@lru_cache(maxsize=None)
def _factor_table(p: GentlePresentation) -> dict:
    from .strings import factors

    return {w: frozenset(factors(p, w)) for w in enumerate_strings(p)}


def _proper_substring(p, u: StringWord, w: StringWord) -> bool:
    return u != w and u in _factor_table(p)[w]


@lru_cache(maxsize=None)
def enumerate_bic(p: GentlePresentation) -> BicLattice:
    return BicLattice(p)


def is_polygonal(bic: BicLattice) -> bool:
    return _is_polygonal(bic.L)
