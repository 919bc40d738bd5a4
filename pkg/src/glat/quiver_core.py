"""Bound quivers: parsing, the gentle axioms, the brick criterion and doubling.

Arrows of a presentation are addressed by an ``ArrowKey`` ``(name, starred)``.
A plain gentle presentation only has unstarred keys; its doubled presentation
adds a starred companion for every arrow.  Everything downstream (strings,
string modules) works against the small duck-typed surface shared by both
classes: ``vertices``, ``ends``, ``rels`` and ``letters_from``.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import NamedTuple, Optional

ArrowKey = tuple[str, bool]


class GlatError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(GlatError, ValueError):
    pass


class NotGentle(GlatError, ValueError):
    pass


class Disconnected(GlatError, ValueError):
    pass


class Letter(NamedTuple):
    """One step of a walk: an arrow, possibly starred, traversed either way.

    The tuple order doubles as the canonical letter order: arrow name first,
    unstarred before starred, direct before inverse.
    """

    arrow: str
    starred: bool = False
    inverse: bool = False

    @property
    def key(self) -> ArrowKey:
        return (self.arrow, self.starred)

    def inv(self) -> "Letter":
        return Letter(self.arrow, self.starred, not self.inverse)

    def __str__(self) -> str:
        return self.arrow + ("*" if self.starred else "") + ("^-1" if self.inverse else "")


def parse_letter(token: str) -> Letter:
    inverse = token.endswith("^-1")
    if inverse:
        token = token[:-3]
    starred = token.endswith("*")
    if starred:
        token = token[:-1]
    if not token:
        raise ParseError("empty letter")
    return Letter(token, starred, inverse)


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


def _valid_identifier(s: object) -> bool:
    return isinstance(s, str) and s != "" and s.isprintable() and not any(c.isspace() for c in s)


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if not self.vertices:
            raise ParseError("a quiver needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise ParseError("duplicate vertex identifiers")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ParseError("duplicate arrow identifiers")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise ParseError(f"arrow {a.name!r} uses an undeclared vertex")
        # connectivity of the underlying undirected graph
        nbrs: dict[str, set[str]] = {v: set() for v in self.vertices}
        for a in self.arrows:
            nbrs[a.source].add(a.target)
            nbrs[a.target].add(a.source)
        seen = {self.vertices[0]}
        todo = [self.vertices[0]]
        while todo:
            for u in nbrs[todo.pop()]:
                if u not in seen:
                    seen.add(u)
                    todo.append(u)
        if len(seen) != len(vs):
            missing = sorted(vs - seen)
            raise Disconnected(f"quiver is not connected; unreachable vertices {missing}")

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)


class _BoundQuiverMixin:
    """Walk helpers shared by gentle and doubled presentations."""

    vertices: tuple[str, ...]
    ends: dict[ArrowKey, tuple[str, str]]
    rels: frozenset[tuple[ArrowKey, ArrowKey]]

    def source(self, x: Letter) -> str:
        s, t = self.ends[x.key]
        return t if x.inverse else s

    def target(self, x: Letter) -> str:
        s, t = self.ends[x.key]
        return s if x.inverse else t

    def is_relation(self, left: Letter, right: Letter) -> bool:
        """Whether ``left right`` (right walked first) is a relation, in either direction."""
        if not left.inverse and not right.inverse:
            return (left.key, right.key) in self.rels
        if left.inverse and right.inverse:
            return (right.key, left.key) in self.rels
        return False

    def follows(self, left: Letter, right: Letter) -> bool:
        """P1 for the consecutive pair ``left right``."""
        return self.source(left) == self.target(right) and left != right.inv()

    @cached_property
    def all_letters(self) -> tuple[Letter, ...]:
        return tuple(sorted(Letter(n, st, inv) for (n, st) in self.ends for inv in (False, True)))

    @cached_property
    def letters_from(self) -> dict[str, tuple[Letter, ...]]:
        out: dict[str, list[Letter]] = {v: [] for v in self.vertices}
        for x in self.all_letters:
            out[self.source(x)].append(x)
        return {v: tuple(xs) for v, xs in out.items()}

    @cached_property
    def letters_into(self) -> dict[str, tuple[Letter, ...]]:
        out: dict[str, list[Letter]] = {v: [] for v in self.vertices}
        for x in self.all_letters:
            out[self.target(x)].append(x)
        return {v: tuple(xs) for v, xs in out.items()}


@dataclass(frozen=True)
class GentlePresentation(_BoundQuiverMixin):
    """A bound quiver ``(Q, I)`` with ``I`` generated by paths of length two.

    A relation ``(a, b)`` is the composite "first ``b``, then ``a``".
    """

    quiver: Quiver
    relations: frozenset[tuple[str, str]]

    doubled = False

    def __post_init__(self):
        names = {a.name: a for a in self.quiver.arrows}
        for a, b in self.relations:
            if a not in names or b not in names:
                raise NotGentle(f"relation ({a}, {b}) mentions an unknown arrow")
            if names[a].source != names[b].target:
                raise NotGentle(
                    f"relation ({a}, {b}) does not compose: source({a}) = {names[a].source} "
                    f"but target({b}) = {names[b].target}"
                )
        _check_gentle(self.quiver, self.relations)

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.quiver.vertices

    @cached_property
    def ends(self) -> dict[ArrowKey, tuple[str, str]]:
        return {(a.name, False): (a.source, a.target) for a in self.quiver.arrows}

    @cached_property
    def rels(self) -> frozenset[tuple[ArrowKey, ArrowKey]]:
        return frozenset(((a, False), (b, False)) for a, b in self.relations)

    @property
    def base(self) -> "GentlePresentation":
        return self


def _check_gentle(q: Quiver, relations: frozenset[tuple[str, str]]) -> None:
    for v in q.vertices:
        outgoing = [a.name for a in q.arrows if a.source == v]
        incoming = [a.name for a in q.arrows if a.target == v]
        if len(outgoing) > 2:
            raise NotGentle(f"(S1) vertex {v!r} has {len(outgoing)} outgoing arrows {outgoing}")
        if len(incoming) > 2:
            raise NotGentle(f"(S1) vertex {v!r} has {len(incoming)} incoming arrows {incoming}")
    for a in q.arrows:
        after = [b.name for b in q.arrows if b.source == a.target]  # b a composable
        before = [c.name for c in q.arrows if c.target == a.source]  # a c composable
        free_after = [b for b in after if (b, a.name) not in relations]
        free_before = [c for c in before if (a.name, c) not in relations]
        if len(free_after) > 1:
            raise NotGentle(f"(S2) arrow {a.name!r} has several continuations outside I: {free_after}")
        if len(free_before) > 1:
            raise NotGentle(f"(S2) arrow {a.name!r} has several predecessors outside I: {free_before}")
        rel_after = [b for b in after if (b, a.name) in relations]
        rel_before = [c for c in before if (a.name, c) in relations]
        if len(rel_after) > 1:
            raise NotGentle(f"(G2) arrow {a.name!r} starts several relations: {rel_after}")
        if len(rel_before) > 1:
            raise NotGentle(f"(G2) arrow {a.name!r} ends several relations: {rel_before}")


@dataclass(frozen=True)
class DoubledPresentation(_BoundQuiverMixin):
    """The doubled bound quiver: every arrow gets a reversed starred twin."""

    base: GentlePresentation

    doubled = True

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.base.vertices

    @cached_property
    def ends(self) -> dict[ArrowKey, tuple[str, str]]:
        out = dict(self.base.ends)
        for (name, _), (s, t) in self.base.ends.items():
            out[(name, True)] = (t, s)
        return out

    @cached_property
    def rels(self) -> frozenset[tuple[ArrowKey, ArrowKey]]:
        out = set(self.base.rels)
        for (b, _), (a, _) in self.base.rels:
            out.add(((a, True), (b, True)))
        return frozenset(out)

    @property
    def starred_arrows(self) -> tuple[Arrow, ...]:
        return tuple(Arrow(a.name + "*", a.target, a.source) for a in self.base.quiver.arrows)


@lru_cache(maxsize=None)
def double(p: GentlePresentation) -> DoubledPresentation:
    return DoubledPresentation(p)


def make_presentation(vertices, arrows, relations=()) -> GentlePresentation:
    """Build a presentation from plain Python data.

    ``arrows`` is an iterable of ``(name, source, target)``; ``relations`` of
    ``(a, b)`` pairs meaning "first b, then a".
    """
    q = Quiver(tuple(str(v) for v in vertices), tuple(Arrow(str(n), str(s), str(t)) for n, s, t in arrows))
    return GentlePresentation(q, frozenset((str(a), str(b)) for a, b in relations))


def parse_quiver(text: str) -> GentlePresentation:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from e
    if not isinstance(data, dict):
        raise ParseError("top level must be an object")
    unknown = set(data) - {"vertices", "arrows", "relations"}
    if unknown:
        raise ParseError(f"unknown keys {sorted(unknown)}")
    vertices = data.get("vertices")
    arrows = data.get("arrows", [])
    relations = data.get("relations", [])
    if not isinstance(vertices, list) or not all(_valid_identifier(v) for v in vertices):
        raise ParseError("'vertices' must be a list of non-empty identifier strings")
    if not isinstance(arrows, list):
        raise ParseError("'arrows' must be a list")
    triples = []
    for a in arrows:
        if not isinstance(a, dict) or set(a) != {"name", "source", "target"}:
            raise ParseError(f"malformed arrow entry {a!r}")
        if not all(_valid_identifier(a[k]) for k in ("name", "source", "target")):
            raise ParseError(f"malformed arrow entry {a!r}")
        if a["name"].endswith("*") or a["name"].endswith("^-1"):
            raise ParseError(f"arrow name {a['name']!r} clashes with the word syntax")
        triples.append((a["name"], a["source"], a["target"]))
    if not isinstance(relations, list):
        raise ParseError("'relations' must be a list")
    pairs = []
    for r in relations:
        if not (isinstance(r, list) and len(r) == 2 and all(_valid_identifier(x) for x in r)):
            raise ParseError(f"malformed relation entry {r!r}")
        pairs.append((r[0], r[1]))
    if len(set(pairs)) != len(pairs):
        raise ParseError("duplicate relation entries")
    return make_presentation(vertices, triples, pairs)


def load_quiver(path) -> GentlePresentation:
    with open(path, encoding="utf-8") as fh:
        return parse_quiver(fh.read())


def dump_quiver(p: GentlePresentation) -> str:
    data = {
        "vertices": list(p.quiver.vertices),
        "arrows": [{"name": a.name, "source": a.source, "target": a.target} for a in p.quiver.arrows],
        "relations": [list(r) for r in sorted(p.relations)],
    }
    return json.dumps(data, indent=2)


class BrickVerdict(NamedTuple):
    is_brick: bool
    # cyclic walk in written order (leftmost letter is walked last)
    witness: Optional[tuple[Letter, ...]] = None

    def __bool__(self) -> bool:
        return self.is_brick


def count_cyclic_relations(p, walk: tuple[Letter, ...]) -> int:
    """Relation occurrences in a cyclic walk, wrap-around pair included."""
    n = len(walk)
    return sum(p.is_relation(walk[i], walk[(i + 1) % n]) for i in range(n))


def is_brick_gentle(p: GentlePresentation) -> BrickVerdict:
    """Search for a cyclic walk carrying at most one relation.

    Breadth-first search over states ``(first letter, last letter, relations so
    far)``; the state space is finite, so the search is exhaustive and the first
    witness found is a shortest one.  Walks are cyclically reduced: no
    backtracking, including across the wrap-around.
    """
    best: Optional[tuple[Letter, ...]] = None
    for first in p.all_letters:
        w = _shortest_cycle_from(p, first)
        if w is not None and (best is None or len(w) < len(best)):
            best = w
    return BrickVerdict(best is None, best)


def _shortest_cycle_from(p, first: Letter) -> Optional[tuple[Letter, ...]]:
    start = p.source(first)
    # state -> parent state; state = (last letter, relation count)
    parent: dict[tuple[Letter, int], Optional[tuple[Letter, int]]] = {(first, 0): None}
    queue = deque([(first, 0)])
    while queue:
        last, rc = queue.popleft()
        if p.target(last) == start and p.follows(first, last):
            total = rc + p.is_relation(first, last)
            if total <= 1:
                walk = []
                state: Optional[tuple[Letter, int]] = (last, rc)
                while state is not None:
                    walk.append(state[0])
                    state = parent[state]
                # walk is collected last-first, which is written order
                return tuple(walk)
        for nxt in p.letters_from[p.target(last)]:
            if nxt == last.inv():
                continue
            nrc = rc + p.is_relation(nxt, last)
            if nrc > 1 or (nxt, nrc) in parent:
                continue
            parent[(nxt, nrc)] = (last, rc)
            queue.append((nxt, nrc))
    return None
