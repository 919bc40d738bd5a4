"""Property batteries run by ``glat verify`` and by the test suite.

Each check returns a :class:`Check`; a suite is a list of them.  Checks never
raise on a failed property, they report it with a witness.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .biclosed import BicLattice, sweep_biclosed
from .lattice_toolkit import (
    CUReport,
    canonical_join_complex,
    canonical_join_rep_oracle,
    cjc_criterion_faces,
    find_isomorphism,
    is_congruence,
    ji_of_label,
    mi_of_label,
    order_isomorphic_by_map,
    refines_all_irredundant,
    semidistributivity_witness,
    shard_order,
    verify_cu_labeling,
)
from .oracle import has_surjection, hom_dim_oracle
from .quiver_core import double
from .shadows import (
    ShadowPosets,
    biclosed_of,
    concatenation_closure,
    end_dim,
    hom_dim,
    hom_vanishes,
    quotient_strings,
    shard_of_wide,
    sim,
    torsion_shadow,
    torshad_widshad,
    wide_shadow_of_shard,
    widshad_torshad,
)
from .strings import (
    enumerate_strings,
    format_label,
    format_word,
    is_self_avoiding,
    label_of_string,
    labels_with_base,
    lifts,
    specialize,
    str_of_label,
    str_tilde,
)

SUITES = ("closure", "cu", "cjc", "shadows", "shards")


@dataclass
class Check:
    suite: str
    name: str
    ok: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"suite": self.suite, "check": self.name, "ok": self.ok, "detail": self.detail}


def _first(items, pred: Callable) -> Optional[object]:
    for it in items:
        if not pred(it):
            return it
    return None


def _check(suite: str, name: str, bad, show: Callable = str) -> Check:
    return Check(suite, name, bad is None, "" if bad is None else f"counterexample: {show(bad)}")


def _set(ws) -> str:
    return "{" + ", ".join(format_word(w) for w in sorted(ws)) + "}"


# ---------------------------------------------------------------- closure


def closure_suite(bic: BicLattice) -> list[Check]:
    p, ix, L = bic.p, bic.ix, bic.L
    out = []
    out.append(_check("closure", "strings are self-avoiding",
                      _first(ix.strings, lambda w: is_self_avoiding(p, w)), format_word))
    out.append(_check("closure", "closure of a single string is itself",
                      _first(range(ix.n), lambda s: ix.closure(1 << s) == 1 << s), lambda s: format_word(ix.strings[s])))
    if ix.n <= 20:
        swept = sweep_biclosed(p)
        out.append(Check("closure", "growth reaches every biclosed set (subset sweep)", swept == set(bic.masks),
                         f"sweep {len(swept)} vs growth {len(bic.masks)}"))
    pairs = [(a, b) for a in range(L.n) for b in range(a, L.n)]
    out.append(_check("closure", "join is the closure of the union",
                      _first(pairs, lambda ab: bic.join_formula(*ab) == L.join(*ab)),
                      lambda ab: f"{_set(bic.words(ab[0]))} v {_set(bic.words(ab[1]))}"))
    out.append(_check("closure", "meet through complements",
                      _first(pairs, lambda ab: bic.meet_formula(*ab) == L.meet(*ab)),
                      lambda ab: f"{_set(bic.words(ab[0]))} ^ {_set(bic.words(ab[1]))}"))
    covers_set = set(L.covers)
    out.append(_check("closure", "complement is an order-reversing bijection",
                      _first(L.covers, lambda ab: (bic.complement(ab[1]), bic.complement(ab[0])) in covers_set),
                      str))
    out.append(_check("closure", "each cover adds one string with one split per break in the lower set",
                      _first(L.covers, lambda ab: bin(bic.masks[ab[1]] ^ bic.masks[ab[0]]).count("1") == 1
                             and all(bin(bic.masks[ab[0]] & bm).count("1") == 1 for bm, _, _ in ix.break_masks[bic.added[ab]])),
                      str))
    ji = set(L.join_irreducibles())
    images = {lab: bic.J_element(lab) for lab in bic.labels}
    out.append(Check("closure", "J is a bijection from labels to join-irreducibles",
                     set(images.values()) == ji and len(set(images.values())) == len(images),
                     f"{len(set(images.values()))} images, {len(ji)} join-irreducibles"))
    out.append(_check("closure", "J(l) has l as its only lower label",
                      _first(bic.labels, lambda lab: bic.lambda_down(images[lab]) == {lab}), format_label))

    def minimal(lab):
        return all(L.leq(images[lab], x) for x in range(L.n) if lab in bic.lambda_down(x))

    out.append(_check("closure", "J(l) lies below every set with l as a lower label",
                      _first(bic.labels, minimal), format_label))
    return out


# ---------------------------------------------------------------- CU labeling


def cu_suite(bic: BicLattice, lab=None) -> list[Check]:
    L = bic.L
    lab = bic.lab if lab is None else lab
    out = []
    w = semidistributivity_witness(L)
    out.append(Check("cu", "semidistributive", w is None, "" if w is None else f"{w[0]} law fails at {w[1]}"))
    rep: CUReport = verify_cu_labeling(L, lab, bic.label_lt)
    out.append(Check("cu", "CN1-CN3 and CU1-CU2", rep.ok,
                     "" if rep.ok else f"{rep.axiom}: {rep.message}; witness {[_fmt(x) for x in rep.witness]}"))
    if rep.ok:
        js, ms = ji_of_label(L, lab), mi_of_label(L, lab)
        used = set(lab.values())
        out.append(Check("cu", "every label has one join- and one meet-irreducible",
                         set(js) == used and set(ms) == used, f"{len(used)} labels, {len(js)} JI, {len(ms)} MI"))

        def least(s):
            j = js[s]
            return all(L.leq(j, x) for x in range(L.n) if s in {lab[(y, x)] for y in L.lower_covers[x]})

        out.append(_check("cu", "the join-irreducible of a label is least among sets with that lower label",
                          _first(sorted(used), least), format_label))
    return out


def _fmt(x) -> str:
    return format_label(x) if hasattr(x, "chosen") else str(x)


# ---------------------------------------------------------------- canonical join complex


def cjc_suite(bic: BicLattice) -> list[Check]:
    p, L = bic.p, bic.L
    pp = double(p)
    out = []
    cjc = canonical_join_complex(L, bic.lab)
    out.append(_check("cjc", "label-based joinands match the lower-cover oracle",
                      _first(range(L.n), lambda x: canonical_join_rep_oracle(L, x) == cjc.faces[x]),
                      lambda x: _set(bic.words(x))))
    out.append(_check("cjc", "joinands refine every irredundant join (brute force where small)",
                      _first(range(L.n), lambda x: refines_all_irredundant(L, x, cjc.faces[x]) is not False),
                      lambda x: _set(bic.words(x))))
    out.append(Check("cjc", "faces are distinct and the complex is flag", cjc.is_flag))
    by_j = {j: s for s, j in ji_of_label(L, bic.lab).items()}
    faces = {frozenset(by_j[j] for j in f) for f in cjc.faces}
    crit = cjc_criterion_faces(bic)
    out.append(Check("cjc", "pairwise criterion faces equal canonical joinand sets", crit == faces,
                     f"criterion {len(crit)} faces, lattice {len(faces)} faces"))

    def orthogonal(x):
        ws = [str_of_label(p, by_j[j]) for j in cjc.faces[x]]
        return all(hom_vanishes(pp, a, b) for a in ws for b in ws if a != b)

    out.append(_check("cjc", "no maps between modules of distinct canonical joinands",
                      _first(range(L.n), orthogonal), lambda x: _set(bic.words(x))))
    return out


# ---------------------------------------------------------------- shadows


def oracle_checks(p, max_len: int = 4) -> list[Check]:
    """Combinatorial Hom counts and quotient strings against GF(2) linear algebra.

    Hom is compared on every string of the double with at most ``max_len``
    letters; the slower surjection search only runs over ``Str~(A)``.
    """
    pp = double(p)
    words = enumerate_strings(pp, max_length=max_len)
    out = []
    bad = _first([(a, b) for a in words for b in words], lambda ab: hom_dim(pp, *ab) == hom_dim_oracle(pp, *ab))
    out.append(_check("shadows", "Hom dimensions agree with the GF(2) oracle", bad,
                      lambda ab: f"{format_word(ab[0])} -> {format_word(ab[1])}"))
    tilde = [w for w in str_tilde(p) if len(w) <= max_len]
    longest = max((len(w) for w in tilde), default=0)
    cands = enumerate_strings(pp, max_length=longest)

    def quotients_agree(w):
        found = {u for u in cands if len(u) <= len(w) and has_surjection(pp, w, u)}
        return found == quotient_strings(pp, w)

    out.append(_check("shadows", "quotient strings agree with a surjection search", _first(tilde, quotients_agree),
                      format_word))
    return out


def shadows_suite(bic: BicLattice, sp: Optional[ShadowPosets] = None) -> list[Check]:
    p = bic.p
    pp = double(p)
    sp = sp or ShadowPosets(bic)
    out = []
    st = str_tilde(p)
    out.append(_check("shadows", "every string of the double over A is a brick",
                      _first(st, lambda w: end_dim(pp, w) == 1), format_word))
    out.append(_check("shadows", "str and label_of_string are inverse",
                      _first(bic.labels, lambda lab: label_of_string(p, str_of_label(p, lab)) == lab), format_label))
    out.append(_check("shadows", "label_of_string then str is the identity",
                      _first(st, lambda w: str_of_label(p, label_of_string(p, w)) == w), format_word))
    out.append(_check("shadows", "str then specialize recovers the base",
                      _first(bic.labels, lambda lab: specialize(p, str_of_label(p, lab)) == lab.base), format_label))
    out.append(_check("shadows", "lifts match labels one to one",
                      _first(bic.strings, lambda w: lifts(p, w) == {str_of_label(p, lab) for lab in labels_with_base(p, w)}),
                      format_word))
    out.extend(oracle_checks(p))
    out.append(_check("shadows", "B(T(B)) = B",
                      _first(range(len(bic)), lambda x: biclosed_of(p, sp.torsion[x]) == bic.words(x)),
                      lambda x: _set(bic.words(x))))
    out.append(_check("shadows", "T(B(T)) = T",
                      _first(sp.torsion, lambda T: torsion_shadow(p, biclosed_of(p, T)) == T), _set))
    out.append(_check("shadows", "every member of B has a lift in T(B)",
                      _first(range(len(bic)), lambda x: {specialize(p, w) for w in sp.torsion[x]} >= bic.words(x)),
                      lambda x: _set(bic.words(x))))
    f = {x: sp.torshad.index[sp.torsion[x]] for x in range(len(bic))}
    out.append(Check("shadows", "B -> T(B) is an order isomorphism onto torshad",
                     len(sp.torshad) == len(bic) and order_isomorphic_by_map(bic.L, sp.torshad, f.__getitem__)))
    out.append(Check("shadows", "Bic and torshad are isomorphic (search)", find_isomorphism(bic.L, sp.torshad) is not None))
    out.append(Check("shadows", "unstarred restriction is a lattice congruence",
                     is_congruence(bic.L, sp.unstarred_fibers()), f"{len(sp.unstarred_fibers())} blocks"))
    return out


# ---------------------------------------------------------------- shards


def shards_suite(bic: BicLattice, sp: Optional[ShadowPosets] = None) -> list[Check]:
    p, L = bic.p, bic.L
    sp = sp or ShadowPosets(bic)
    so = shard_order(L, bic.lab)
    out = [
        Check("shards", "psi is injective", so.injective),
        Check("shards", "the shard order is a lattice", so.is_lattice, so.lattice_error or ""),
    ]
    out.append(_check("shards", "shard_of_wide undoes wide_shadow_of_shard",
                      _first(sp.shards, lambda s: shard_of_wide(bic, wide_shadow_of_shard(p, s)) == s),
                      lambda s: "{" + ", ".join(map(format_label, sorted(s))) + "}"))
    if so.is_lattice:
        f = {so.lattice.index[s]: sp.widshad.index[w] for s, w in zip(sp.shards, sp.wide)}
        out.append(Check("shards", "psi(B) -> wide shadow is an order isomorphism onto widshad",
                         len(sp.widshad) == len(so.lattice) and order_isomorphic_by_map(so.lattice, sp.widshad, f.__getitem__)))
        out.append(Check("shards", "shard order and widshad are isomorphic (search)",
                         find_isomorphism(so.lattice, sp.widshad) is not None))
    out.append(_check("shards", "torshad_widshad then widshad_torshad is the identity",
                      _first(sp.torsion, lambda T: widshad_torshad(bic, torshad_widshad(bic, T)) == T), _set))
    out.append(_check("shards", "widshad_torshad then torshad_widshad is the identity",
                      _first(sp.wide, lambda W: torshad_widshad(bic, widshad_torshad(bic, W)) == W), _set))
    out.append(_check("shards", "a wide shadow is generated by its simples",
                      _first(sp.wide, lambda W: not W or concatenation_closure(p, [str_of_label(p, s) for s in sim(p, W)]) == W),
                      _set))
    out.append(_check("shards", "wide shadow = concatenations of str of the lower labels",
                      _first(range(len(bic)), lambda x: concatenation_closure(p, [str_of_label(p, s) for s in bic.lambda_down(x)]) == sp.wide[x]),
                      lambda x: _set(bic.words(x))))
    return out


def run_suites(bic: BicLattice, names=SUITES, lab=None) -> list[Check]:
    sp = ShadowPosets(bic)
    out: list[Check] = []
    for name in names:
        if name == "closure":
            out += closure_suite(bic)
        elif name == "cu":
            out += cu_suite(bic, lab)
        elif name == "cjc":
            out += cjc_suite(bic)
        elif name == "shadows":
            out += shadows_suite(bic, sp)
        elif name == "shards":
            out += shards_suite(bic, sp)
        else:
            raise ValueError(f"unknown suite {name!r}")
    return out
