import json

import pytest

from glat.quiver_core import (
    Disconnected,
    Letter,
    NotGentle,
    ParseError,
    count_cyclic_relations,
    double,
    dump_quiver,
    is_brick_gentle,
    make_presentation,
    parse_letter,
    parse_quiver,
)

from conftest import quiver


def _two_cycle_data(relations):
    return {
        "vertices": ["1", "2"],
        "arrows": [{"name": "alpha", "source": "1", "target": "2"}, {"name": "beta", "source": "2", "target": "1"}],
        "relations": relations,
    }


def test_two_cycle_parses(two_cycle):
    assert two_cycle.vertices == ("1", "2")
    assert two_cycle.relations == {("alpha", "beta"), ("beta", "alpha")}


def test_point_parses(point):
    assert point.vertices == ("1",)
    assert point.all_letters == ()


def test_relation_that_does_not_compose():
    with pytest.raises(NotGentle):
        parse_quiver(json.dumps(_two_cycle_data([["alpha", "alpha"]])))


@pytest.mark.parametrize(
    "text",
    [
        "{bad",
        "[]",
        '{"vertices": []}',
        '{"vertices": ["1"], "arrows": [{"name": "a", "source": "1"}]}',
        '{"vertices": ["1", "1"]}',
        '{"vertices": ["1"], "extra": 1}',
        '{"vertices": ["1", "2"], "arrows": [{"name": "a", "source": "1", "target": "3"}]}',
        '{"vertices": ["1", "2"], "arrows": [{"name": "a*", "source": "1", "target": "2"}]}',
    ],
)
def test_malformed_files(text):
    with pytest.raises(ParseError):
        parse_quiver(text)


def test_disconnected():
    with pytest.raises(Disconnected):
        make_presentation(["1", "2"], [])


def test_three_outgoing_arrows_is_not_gentle():
    with pytest.raises(NotGentle, match="S1"):
        make_presentation("1234", [("a", "1", "2"), ("b", "1", "3"), ("c", "1", "4")])


def test_two_free_continuations_is_not_gentle():
    with pytest.raises(NotGentle, match="S2"):
        make_presentation("1234", [("a", "1", "2"), ("b", "2", "3"), ("c", "2", "4")])
    # one relation repairs it
    make_presentation("1234", [("a", "1", "2"), ("b", "2", "3"), ("c", "2", "4")], [("b", "a")])


def test_two_relations_after_one_arrow_is_not_gentle():
    with pytest.raises(NotGentle, match="G2"):
        make_presentation("1234", [("a", "1", "2"), ("b", "2", "3"), ("c", "2", "4")], [("b", "a"), ("c", "a")])


def test_dump_round_trip(square):
    assert parse_quiver(dump_quiver(square)) == square


def test_letters():
    x = parse_letter("beta*^-1")
    assert x == Letter("beta", True, True)
    assert str(x) == "beta*^-1"
    assert x.inv() == Letter("beta", True, False)
    assert Letter("a") < Letter("a", True) < Letter("b")
    assert Letter("a", False, False) < Letter("a", False, True)


def test_brick_verdicts(two_cycle, square, a2, point):
    assert is_brick_gentle(two_cycle)
    assert is_brick_gentle(square)
    assert is_brick_gentle(a2)
    assert is_brick_gentle(point)


def test_not_brick_witness():
    p = quiver("not_brick")
    verdict = is_brick_gentle(p)
    assert not verdict
    assert {x.arrow for x in verdict.witness} == {"epsilon", "delta", "gamma", "beta"}
    assert count_cyclic_relations(p, verdict.witness) == 0


def test_kronecker_is_not_brick():
    verdict = is_brick_gentle(quiver("kronecker"))
    assert not verdict
    assert len(verdict.witness) == 2


def test_oriented_cycle_with_one_relation_is_not_brick():
    p = make_presentation("12", [("a", "1", "2"), ("b", "2", "1")], [("a", "b")])
    verdict = is_brick_gentle(p)
    assert not verdict and count_cyclic_relations(p, verdict.witness) <= 1


def test_double_two_cycle(two_cycle):
    pp = double(two_cycle)
    assert set(pp.ends) == {("alpha", False), ("beta", False), ("alpha", True), ("beta", True)}
    assert pp.ends[("alpha", True)] == ("2", "1")
    a, b, a_, b_ = ("alpha", False), ("beta", False), ("alpha", True), ("beta", True)
    assert pp.rels == {(a, b), (b, a), (b_, a_), (a_, b_)}


def test_double_a2(a2):
    pp = double(a2)
    assert set(pp.ends) == {("alpha", False), ("alpha", True)}
    assert pp.rels == frozenset()


def test_double_square(square):
    pp = double(square)
    assert len(pp.ends) == 8
    d, a, g = ("delta", True), ("alpha", True), ("gamma", True)
    assert pp.rels == {(("alpha", False), ("delta", False)), (("delta", False), ("gamma", False)), (d, a), (g, d)}
    assert [x.name for x in pp.starred_arrows] == ["alpha*", "beta*", "gamma*", "delta*"]


@pytest.mark.parametrize("name", ["two_cycle", "a2_path", "square", "point", "kronecker", "not_brick"])
def test_double_adds_one_arrow_and_relation_each(name):
    p = quiver(name)
    pp = double(p)
    assert len(pp.ends) == 2 * len(p.ends)
    assert len(pp.rels) == 2 * len(p.rels)
