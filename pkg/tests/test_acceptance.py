"""Acceptance criteria, one test per criterion, all exact.

Run with pytest; the terminal summary prints one PASS/FAIL line per criterion.
``python tests/test_acceptance.py`` does the same on its own.
"""
from itertools import permutations

import pytest

from glat.biclosed import J, enumerate_bic, is_polygonal
from glat.lattice_toolkit import (
    build_lattice,
    canonical_join_complex,
    cjc_criterion_faces,
    find_isomorphism,
    is_congruence,
    ji_of_label,
    shard_order,
    verify_cu_labeling,
)
from glat.oracle import hom_dim_oracle
from glat.quiver_core import double
from glat.shadows import (
    ShadowPosets,
    biclosed_of,
    end_dim,
    hom_vanishes,
    shard_of_wide,
    torshad_widshad,
    torsion_shadow,
    widshad_torshad,
)
from glat.strings import enumerate_strings, format_word, is_self_avoiding, lazy, make_label, str_of_label, str_tilde, word

from conftest import DESK, quiver


@pytest.fixture(scope="module")
def bics():
    return {name: enumerate_bic(quiver(name)) for name in DESK}


@pytest.fixture(scope="module")
def shadow_posets(bics):
    return {name: ShadowPosets(b) for name, b in bics.items()}


def _square_label(p):
    # base alpha^-1 beta gamma^-1, splits e1, e4 and alpha^-1 (stored as its canonical form alpha)
    return make_label(p, word("alpha^-1", "beta", "gamma^-1"), [lazy("1"), lazy("4"), word("alpha^-1").canonical()])


def test_criterion_01_example_J(bics):
    p = bics["square"].p
    got = J(p, _square_label(p))
    expected = {lazy("1"), lazy("4"), word("alpha^-1").canonical(), word("delta"), word("alpha^-1", "beta", "gamma^-1")}
    assert got == expected


def test_criterion_02_torsion_shadow_example(bics):
    p = bics["square"].p
    T = torsion_shadow(p, J(p, _square_label(p)))
    assert T == {lazy("1"), lazy("4"), word("alpha^-1").canonical(), word("delta"), word("delta*"),
                 word("alpha^-1", "beta*^-1", "gamma*")}
    assert str_of_label(p, _square_label(p)) == word("alpha^-1", "beta*^-1", "gamma*")
    assert format_word(str_of_label(p, _square_label(p))) == "alpha^-1 beta*^-1 gamma*"


def test_criterion_03_two_cycle_counts(bics, shadow_posets):
    bic, sp = bics["two_cycle"], shadow_posets["two_cycle"]
    assert len(enumerate_strings(bic.p)) == 4
    assert len(bic) == 10
    assert len(bic.L.join_irreducibles()) == 6
    assert len(sp.torshad) == 10
    assert len(sp.widshad) == 10
    assert find_isomorphism(bic.L, sp.torshad) is not None
    assert find_isomorphism(shard_order(bic.L, bic.lab).lattice, sp.widshad) is not None


def _weak_order_s3():
    def inversions(perm):
        return frozenset((perm[i], perm[j]) for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])

    perms = list(permutations((1, 2, 3)))
    covers = [(a, b) for a in perms for b in perms
              if inversions(a) < inversions(b) and len(inversions(b)) == len(inversions(a)) + 1]
    return build_lattice(covers, perms)


def test_criterion_04_a2_is_weak_order(bics):
    bic = bics["a2_path"]
    assert len(bic) == 6
    assert find_isomorphism(bic.L, _weak_order_s3()) is not None


def test_criterion_05_cu_labeling(bics):
    for name, bic in bics.items():
        rep = verify_cu_labeling(bic.L, bic.lab, bic.label_lt)
        assert rep.ok, (name, rep)


def test_criterion_06_canonical_join_complex(bics):
    for name, bic in bics.items():
        cjc = canonical_join_complex(bic.L, bic.lab)
        by_j = {j: s for s, j in ji_of_label(bic.L, bic.lab).items()}
        assert cjc_criterion_faces(bic) == {frozenset(by_j[j] for j in f) for f in cjc.faces}, name
        assert cjc.is_flag, name
    cjc = canonical_join_complex(bics["two_cycle"].L, bics["two_cycle"].lab)
    assert len(cjc.vertices) == 6
    assert len(cjc.edges) == 3


def test_criterion_07_hom_vanishing(bics):
    for name, bic in bics.items():
        p = bic.p
        pp = double(p)
        cjc = canonical_join_complex(bic.L, bic.lab)
        by_j = {j: s for s, j in ji_of_label(bic.L, bic.lab).items()}
        for face in cjc.faces:
            ws = [str_of_label(p, by_j[j]) for j in face]
            assert all(hom_vanishes(pp, a, b) for a in ws for b in ws if a != b), name
        words = enumerate_strings(pp, max_length=4)
        for a in words:
            for b in words:
                assert hom_vanishes(pp, a, b) == (hom_dim_oracle(pp, a, b) == 0), (name, a, b)


def test_criterion_08_shard_order(bics, shadow_posets):
    for name, bic in bics.items():
        so = shard_order(bic.L, bic.lab)
        assert so.injective, name
        assert len(set(so.psi)) == len(bic), name
        assert so.is_lattice, name
        for s, W in zip(shadow_posets[name].shards, shadow_posets[name].wide):
            assert shard_of_wide(bic, W) == s, name


def test_criterion_09_bijection_round_trips(bics, shadow_posets):
    for name, bic in bics.items():
        p, sp = bic.p, shadow_posets[name]
        for x, T in enumerate(sp.torsion):
            assert biclosed_of(p, T) == bic.words(x), name
            assert torsion_shadow(p, biclosed_of(p, T)) == T, name
            assert widshad_torshad(bic, torshad_widshad(bic, T)) == T, name
        for W in sp.wide:
            assert torshad_widshad(bic, widshad_torshad(bic, W)) == W, name


def test_criterion_10_bricks(bics):
    for name, bic in bics.items():
        p = bic.p
        pp = double(p)
        assert all(end_dim(pp, w) == 1 for w in str_tilde(p)), name
        assert all(is_self_avoiding(p, w) for w in enumerate_strings(p)), name


def test_criterion_11_congruence(bics, shadow_posets):
    for name, bic in bics.items():
        assert is_congruence(bic.L, shadow_posets[name].unstarred_fibers()), name


def test_criterion_12_polygonality(bics):
    assert is_polygonal(bics["two_cycle"]) is False
    assert is_polygonal(bics["a2_path"]) is True


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
