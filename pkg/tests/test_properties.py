"""Property tests over randomly generated gentle quivers."""
from itertools import combinations

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from glat.biclosed import BicLattice, closure, is_biclosed, is_polygonal
from glat.lattice_toolkit import (
    FiniteLattice,
    canonical_join_complex,
    canonical_join_rep_oracle,
    cjc_criterion_faces,
    is_congruence,
    is_semidistributive,
    ji_of_label,
    shard_order,
    verify_cu_labeling,
)
from glat.oracle import hom_dim_oracle
from glat.quiver_core import Letter, double, is_brick_gentle, make_presentation
from glat.shadows import ShadowPosets, biclosed_of, hom_dim, shard_of_wide, torsion_shadow
from glat.strings import (
    StringWord,
    all_labels,
    enumerate_strings,
    is_self_avoiding,
    label_of_string,
    labels_with_base,
    lifts,
    specialize,
    str_of_label,
    str_tilde,
)

from conftest import quiver

SETTINGS = settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])


@st.composite
def gentle_quivers(draw, max_vertices=5, extra_edges=True):
    n = draw(st.integers(1, max_vertices))
    vs = [str(i + 1) for i in range(n)]
    edges = []
    for i in range(1, n):
        j = draw(st.integers(0, i - 1))
        edges.append((vs[i], vs[j]) if draw(st.booleans()) else (vs[j], vs[i]))
    if extra_edges and n >= 2:
        for _ in range(draw(st.integers(0, 2))):
            a, b = draw(st.sampled_from([(u, v) for u in vs for v in vs if u != v]))
            edges.append((a, b))
    outdeg = {v: sum(s == v for s, _ in edges) for v in vs}
    indeg = {v: sum(t == v for _, t in edges) for v in vs}
    assume(all(outdeg[v] <= 2 and indeg[v] <= 2 for v in vs))
    arrows = [(f"a{k}", s, t) for k, (s, t) in enumerate(edges)]
    relations = []
    for v in vs:
        ins = [a for a, _, t in arrows if t == v]
        outs = [a for a, s, _ in arrows if s == v]
        if len(ins) == 2 and len(outs) == 2:
            flip = draw(st.booleans())
            relations += [(outs[0], ins[flip]), (outs[1], ins[not flip])]
        elif len(ins) == 1 and len(outs) == 2:
            relations.append((draw(st.sampled_from(outs)), ins[0]))
        elif len(ins) == 2 and len(outs) == 1:
            relations.append((outs[0], draw(st.sampled_from(ins))))
        elif len(ins) == 1 and len(outs) == 1 and draw(st.booleans()):
            relations.append((outs[0], ins[0]))
    return make_presentation(vs, arrows, relations)


@st.composite
def small_brick_gentle(draw, max_strings=12):
    p = draw(gentle_quivers())
    assume(is_brick_gentle(p))
    assume(len(enumerate_strings(p, max_strings=200)) <= max_strings)
    return p


def has_oriented_two_cycle(p) -> bool:
    ends = set(p.ends.values())
    return any((t, s) in ends for s, t in ends)


@SETTINGS
@given(gentle_quivers(extra_edges=False))
def test_trees_are_brick_gentle(p):
    assert is_brick_gentle(p)


@SETTINGS
@given(small_brick_gentle())
def test_strings_and_labels(p):
    ws = enumerate_strings(p)
    assert all(is_self_avoiding(p, w) for w in ws)
    assert all(w.canonical() == w == w.inverse().canonical() for w in ws)
    for w in ws:
        assert len(lifts(p, w)) == len(labels_with_base(p, w)) == 2 ** len(w)
    for s in all_labels(p):
        assert label_of_string(p, str_of_label(p, s)) == s
        assert specialize(p, str_of_label(p, s)) == s.base
    assert all(str_of_label(p, label_of_string(p, w)) == w for w in str_tilde(p))


@SETTINGS
@given(small_brick_gentle(), st.data())
def test_closure_axioms(p, data):
    ws = enumerate_strings(p)
    X = set(data.draw(st.sets(st.sampled_from(ws))))
    Y = X | set(data.draw(st.sets(st.sampled_from(ws))))
    cX = closure(p, X)
    assert X <= cX
    assert closure(p, cX) == cX
    assert cX <= closure(p, Y)
    # a closure is closed, so it is biclosed exactly when its complement is closed
    assert is_biclosed(p, cX) == (closure(p, set(ws) - cX) == set(ws) - cX)


@SETTINGS
@given(small_brick_gentle())
def test_bic_lattice(p):
    bic = BicLattice(p)
    L = bic.L
    assert is_semidistributive(L)
    assert verify_cu_labeling(L, bic.lab, bic.label_lt).ok
    assert sorted(bic.J_element(s) for s in bic.labels) == L.join_irreducibles()
    for a, b in combinations(range(L.n), 2):
        assert bic.join_formula(a, b) == L.join(a, b)
        assert bic.meet_formula(a, b) == L.meet(a, b)
    assert is_polygonal(bic) == (not has_oriented_two_cycle(p))


@SETTINGS
@given(small_brick_gentle(max_strings=10))
def test_canonical_join_complex(p):
    bic = BicLattice(p)
    cjc = canonical_join_complex(bic.L, bic.lab)
    assert cjc.is_flag
    assert all(cjc.faces[x] == canonical_join_rep_oracle(bic.L, x) for x in range(bic.L.n))
    by_j = {j: s for s, j in ji_of_label(bic.L, bic.lab).items()}
    assert cjc_criterion_faces(bic) == {frozenset(by_j[j] for j in f) for f in cjc.faces}


@SETTINGS
@given(small_brick_gentle(max_strings=10))
def test_shadows_and_shards(p):
    bic = BicLattice(p)
    sp = ShadowPosets(bic)
    so = shard_order(bic.L, bic.lab)
    assert so.injective and so.is_lattice
    assert len(sp.torshad) == len(sp.widshad) == len(bic)
    for x, T in enumerate(sp.torsion):
        assert biclosed_of(p, T) == bic.words(x)
        assert torsion_shadow(p, bic.words(x)) == T
    for s, W in zip(sp.shards, sp.wide):
        assert shard_of_wide(bic, W) == s
    assert is_congruence(bic.L, sp.unstarred_fibers())


letters = st.builds(Letter, st.sampled_from(["alpha", "beta", "gamma", "delta"]), st.booleans(), st.booleans())


@given(st.lists(letters, min_size=1, max_size=6))
def test_canonical_is_idempotent(ls):
    w = StringWord(tuple(ls))
    c = w.canonical()
    assert c.canonical() == c
    assert w.inverse().canonical() == c
    assert c in (w, w.inverse())


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_hom_dim_against_oracle(data):
    p = quiver(data.draw(st.sampled_from(["two_cycle", "square", "a2_path"])))
    pp = double(p)
    ws = enumerate_strings(pp, max_length=4)
    a, b = data.draw(st.sampled_from(ws)), data.draw(st.sampled_from(ws))
    assert hom_dim(pp, a, b) == hom_dim_oracle(pp, a, b)


@settings(max_examples=40, deadline=None)
@given(st.sets(st.frozensets(st.integers(0, 4)), max_size=6))
def test_union_closed_families_are_lattices(gens):
    family = {frozenset()}
    for g in gens:
        family |= {f | g for f in family}
    family = sorted(family, key=lambda s: (len(s), sorted(s)))
    covers = [(a, b) for a in family for b in family
              if a < b and not any(a < c < b for c in family)]
    L = FiniteLattice(family, covers)
    for i in range(L.n):
        for j in range(L.n):
            assert L.elements[L.join(i, j)] == L.elements[i] | L.elements[j]
