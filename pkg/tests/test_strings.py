import pytest

from glat.quiver_core import double, parse_letter
from glat.strings import (
    Label,
    NotFinite,
    NotInStrTilde,
    StringWord,
    TooManyStrings,
    all_labels,
    breaks,
    concatenate,
    concatenations,
    enumerate_strings,
    format_label,
    format_word,
    is_proper_substring,
    is_self_avoiding,
    is_valid,
    label_of_string,
    labels_with_base,
    lazy,
    lifts,
    make_label,
    specialize,
    splits,
    str_of_label,
    str_tilde,
    word,
    word_from_json,
    word_to_json,
)

from conftest import quiver

A = word("alpha")
B = word("beta")
E = lambda v: lazy(v)  # noqa: E731
W = word("alpha^-1", "beta", "gamma^-1")


def words(*texts):
    return {word(*t.split()) if not t.startswith("e") else lazy(t[1:]) for t in texts}


def test_enumerate_two_cycle(two_cycle):
    assert set(enumerate_strings(two_cycle)) == words("e1", "e2", "alpha", "beta")


def test_enumerate_a2(a2):
    assert set(enumerate_strings(a2)) == words("e1", "e2", "alpha")


def test_enumerate_square(square):
    got = set(enumerate_strings(square))
    assert got == words("e1", "e2", "e3", "e4", "alpha", "beta", "gamma", "delta",
                        "alpha^-1 beta", "beta gamma^-1", "alpha^-1 beta gamma^-1")
    assert len(got) == 11


def test_enumeration_is_sorted_and_canonical(square):
    ws = enumerate_strings(square)
    assert ws == sorted(ws)
    assert all(w == w.canonical() for w in ws)


def test_enumeration_guards():
    with pytest.raises(NotFinite):
        enumerate_strings(quiver("kronecker"))
    with pytest.raises(TooManyStrings):
        enumerate_strings(quiver("square"), max_strings=5)


def test_doubled_enumeration_is_capped(square):
    pp = double(square)
    assert max(len(w) for w in enumerate_strings(pp)) <= 3


def test_concatenate(square, two_cycle):
    assert concatenate(square, E("1"), parse_letter("delta"), E("4")) == word("delta")
    assert concatenate(two_cycle, E("1"), parse_letter("beta"), E("2")) == word("beta")
    assert concatenate(square, word("alpha^-1"), parse_letter("alpha"), word("delta")) is None


def test_concatenations_all_orders(square):
    assert concatenations(square, word("alpha"), word("gamma")) == {W}
    assert concatenations(square, E("1"), E("4")) == {word("delta")}
    assert concatenations(square, E("1"), E("3")) == set()


def test_breaks(two_cycle, square):
    (b,) = breaks(two_cycle, A)
    assert (b.left, b.right) == (E("2"), E("1"))
    got = [(x.position, x.left, x.right) for x in breaks(square, W)]
    assert got == [
        (1, word("alpha^-1", "beta"), E("4")),
        (2, word("alpha^-1").canonical(), word("gamma^-1").canonical()),
        (3, E("1"), word("beta", "gamma^-1")),
    ]
    assert breaks(square, E("1")) == []


def test_breaks_reassemble(square):
    for w in enumerate_strings(square):
        for b in breaks(square, w):
            assert w in concatenations(square, b.left, b.right)


def test_splits(square):
    assert splits(square, word("delta")) == {E("1"), E("4")}


def test_proper_substring(square):
    assert is_proper_substring(square, B, W)
    assert not is_proper_substring(square, W, W)
    assert not is_proper_substring(square, word("delta"), W)
    assert is_proper_substring(square, E("2"), word("beta"))


def test_all_labels_counts(two_cycle, a2, point, square):
    assert len(all_labels(two_cycle)) == 6
    assert {format_label(s) for s in all_labels(two_cycle)} == {
        "e1_{}", "e2_{}", "alpha_{e1}", "alpha_{e2}", "beta_{e1}", "beta_{e2}"}
    assert len(all_labels(a2)) == 4
    assert [format_label(s) for s in all_labels(point)] == ["e1_{}"]
    assert len(all_labels(square)) == sum(2 ** len(w) for w in enumerate_strings(square)) == 28


def test_make_label_rejects_bad_choices(square):
    with pytest.raises(ValueError):
        make_label(square, W, [E("1"), E("4")])
    with pytest.raises(ValueError):
        make_label(square, word("delta"), [E("1"), E("4")])


def _square_label(square):
    return make_label(square, W, [E("1"), E("4"), word("alpha")])


def test_str_of_label(two_cycle, square):
    assert format_word(str_of_label(square, _square_label(square))) == "alpha^-1 beta*^-1 gamma*"
    assert str_of_label(two_cycle, make_label(two_cycle, A, [E("1")])) == A
    assert str_of_label(two_cycle, make_label(two_cycle, A, [E("2")])) == word("alpha*")


def test_label_of_string(two_cycle, square):
    assert label_of_string(two_cycle, word("alpha*")) == make_label(two_cycle, A, [E("2")])
    assert label_of_string(two_cycle, E("1")) == Label(E("1"), frozenset())
    assert label_of_string(square, word("alpha^-1", "beta*^-1", "gamma*")) == _square_label(square)
    with pytest.raises(NotInStrTilde):
        label_of_string(square, word("alpha", "delta*"))


def test_specialize(square):
    assert specialize(square, word("alpha^-1", "beta*^-1", "gamma*")) == W
    assert specialize(square, word("delta*")) == word("delta")
    assert specialize(square, E("3")) == E("3")


def test_lifts(two_cycle, square):
    assert lifts(two_cycle, A) == {A, word("alpha*")}
    assert lifts(square, E("2")) == {E("2")}
    got = lifts(square, word("alpha^-1", "beta"))
    assert len(got) == 4
    assert {specialize(square, w) for w in got} == {word("alpha^-1", "beta")}


@pytest.mark.parametrize("name", ["two_cycle", "a2_path", "square", "point"])
def test_label_string_bijection(name):
    p = quiver(name)
    labs = all_labels(p)
    tilde = str_tilde(p)
    assert len(tilde) == len(labs)
    assert all(label_of_string(p, str_of_label(p, s)) == s for s in labs)
    assert all(str_of_label(p, label_of_string(p, w)) == w for w in tilde)
    assert all(specialize(p, str_of_label(p, s)) == s.base for s in labs)
    for w in enumerate_strings(p):
        assert len(lifts(p, w)) == len(labels_with_base(p, w)) == 2 ** len(w)


def test_strings_self_avoiding(square):
    assert all(is_self_avoiding(square, w) for w in enumerate_strings(square))


def test_word_validity(square):
    assert is_valid(square, W)
    assert not is_valid(square, word("alpha", "delta"))  # a relation
    assert not is_valid(square, word("alpha", "alpha^-1"))  # backtracking
    assert not is_valid(square, word("alpha", "beta"))  # endpoints do not meet


def test_json_round_trip(square):
    for w in enumerate_strings(double(square)):
        assert word_from_json(word_to_json(w)) == w
    assert word_to_json(E("3")) == {"lazy": "3"}
    assert word_to_json(word("alpha^-1", "beta*^-1")) == ["alpha^-1", "beta*^-1"]


def test_canonical_form():
    w = StringWord((parse_letter("gamma"), parse_letter("beta^-1"), parse_letter("alpha")))
    assert w.canonical() == W
    assert w.inverse().inverse() == w
