"""Finite lattices given by their cover relation.

Elements are kept in a linear extension of the order, so an index is also a
position in that extension.  Down-sets and up-sets are Python ``int`` bitmasks
over those indices, which keeps joins and meets to a couple of bit operations.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Hashable, Iterable, Optional, Sequence


class NotALattice(ValueError):
    def __init__(self, msg: str, witness: tuple = ()):
        super().__init__(msg)
        self.witness = witness


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FiniteLattice:
    """A finite lattice built from its Hasse diagram.

    ``elements`` may be any hashable values; they are reordered into a linear
    extension (stable with respect to the given order).  Raises
    :class:`NotALattice` if some pair lacks a unique join or meet.
    """

    def __init__(self, elements: Sequence[Hashable], covers: Iterable[tuple[Hashable, Hashable]]):
        elements = list(elements)
        pos = {e: i for i, e in enumerate(elements)}
        if len(pos) != len(elements):
            raise ValueError("duplicate elements")
        ups: list[list[int]] = [[] for _ in elements]
        indeg = [0] * len(elements)
        edges = set()
        for a, b in covers:
            ia, ib = pos[a], pos[b]
            if (ia, ib) in edges:
                continue
            edges.add((ia, ib))
            ups[ia].append(ib)
            indeg[ib] += 1
        # Kahn's algorithm, smallest given position first
        heap = [i for i in range(len(elements)) if indeg[i] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            i = heapq.heappop(heap)
            order.append(i)
            for j in ups[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    heapq.heappush(heap, j)
        if len(order) != len(elements):
            raise NotALattice("cover relation has a cycle")
        new = {old: k for k, old in enumerate(order)}
        self.elements: list = [elements[i] for i in order]
        self.index: dict = {e: k for k, e in enumerate(self.elements)}
        n = self.n = len(self.elements)
        self.upper_covers: list[list[int]] = [[] for _ in range(n)]
        self.lower_covers: list[list[int]] = [[] for _ in range(n)]
        for ia, ib in sorted(edges):
            a, b = new[ia], new[ib]
            self.upper_covers[a].append(b)
            self.lower_covers[b].append(a)
        for lst in self.upper_covers + self.lower_covers:
            lst.sort()
        self.covers: list[tuple[int, int]] = sorted((a, b) for a in range(n) for b in self.upper_covers[a])
        self.down = [0] * n
        for i in range(n):
            m = 1 << i
            for c in self.lower_covers[i]:
                m |= self.down[c]
            self.down[i] = m
        self.up = [0] * n
        for i in reversed(range(n)):
            m = 1 << i
            for c in self.upper_covers[i]:
                m |= self.up[c]
            self.up[i] = m
        for a, b in self.covers:
            # a genuine cover has nothing strictly in between
            if (self.up[a] & self.down[b]) != (1 << a) | (1 << b):
                raise NotALattice(f"({self.elements[a]!r}, {self.elements[b]!r}) is not a cover", (a, b))
        self._build_tables()

    def _build_tables(self) -> None:
        n = self.n
        up, down = self.up, self.down
        self.join_table = [[0] * n for _ in range(n)]
        self.meet_table = [[0] * n for _ in range(n)]
        for a in range(n):
            ja, ma = self.join_table[a], self.meet_table[a]
            for b in range(a, n):
                ub = up[a] & up[b]
                if not ub:
                    raise NotALattice(f"{self.elements[a]!r} and {self.elements[b]!r} have no upper bound", (a, b))
                c = (ub & -ub).bit_length() - 1
                if ub & ~up[c]:
                    raise NotALattice(f"{self.elements[a]!r} and {self.elements[b]!r} have no least upper bound", (a, b))
                ja[b] = c
                self.join_table[b][a] = c
                lb = down[a] & down[b]
                if not lb:
                    raise NotALattice(f"{self.elements[a]!r} and {self.elements[b]!r} have no lower bound", (a, b))
                c = lb.bit_length() - 1
                if lb & ~down[c]:
                    raise NotALattice(f"{self.elements[a]!r} and {self.elements[b]!r} have no greatest lower bound", (a, b))
                ma[b] = c
                self.meet_table[b][a] = c

    # -- basic queries

    def __len__(self) -> int:
        return self.n

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.n - 1

    def leq(self, a: int, b: int) -> bool:
        return bool(self.down[b] >> a & 1)

    def join(self, a: int, b: int) -> int:
        return self.join_table[a][b]

    def meet(self, a: int, b: int) -> int:
        return self.meet_table[a][b]

    def join_all(self, xs: Iterable[int]) -> int:
        out = self.bottom
        for x in xs:
            out = self.join_table[out][x]
        return out

    def meet_all(self, xs: Iterable[int]) -> int:
        out = self.top
        for x in xs:
            out = self.meet_table[out][x]
        return out

    def join_irreducibles(self) -> list[int]:
        return [i for i in range(self.n) if len(self.lower_covers[i]) == 1]

    def meet_irreducibles(self) -> list[int]:
        return [i for i in range(self.n) if len(self.upper_covers[i]) == 1]

    def interval(self, a: int, b: int) -> list[int]:
        return list(_bits(self.up[a] & self.down[b]))

    def dual(self) -> "FiniteLattice":
        return FiniteLattice(list(reversed(self.elements)), [(self.elements[b], self.elements[a]) for a, b in self.covers])

    def maximal_chains(self, a: int, b: int, through: Optional[int] = None) -> list[tuple[int, ...]]:
        """All maximal chains of ``[a, b]``, optionally restricted to those containing ``through``."""
        box = self.up[a] & self.down[b]
        out: list[tuple[int, ...]] = []

        def walk(chain: list[int]) -> None:
            last = chain[-1]
            if last == b:
                out.append(tuple(chain))
                return
            for c in self.upper_covers[last]:
                if box >> c & 1:
                    chain.append(c)
                    walk(chain)
                    chain.pop()

        if through is None:
            walk([a])
        elif self.leq(a, through) and self.leq(through, b):
            lower = self.maximal_chains(a, through) if through != a else [(a,)]
            upper = self.maximal_chains(through, b)
            out = [lo + hi[1:] for lo in lower for hi in upper]
        return out



def build_lattice(covers: Iterable[tuple[Hashable, Hashable]], elements: Optional[Sequence[Hashable]] = None) -> FiniteLattice:
    covers = list(covers)
    if elements is None:
        seen: dict = {}
        for a, b in covers:
            seen.setdefault(a, None)
            seen.setdefault(b, None)
        elements = list(seen)
    return FiniteLattice(elements, covers)


def _refine(l1: FiniteLattice, l2: FiniteLattice, a: list, b: list) -> tuple[list, list]:
    """Colour refinement on both Hasse diagrams with one shared palette, run to a fixpoint."""

    def step(L, c):
        return [(c[i], tuple(sorted(c[j] for j in L.lower_covers[i])), tuple(sorted(c[j] for j in L.upper_covers[i])))
                for i in range(L.n)]

    classes = len(set(a) | set(b))
    while True:
        a, b = step(l1, a), step(l2, b)
        table = {c: k for k, c in enumerate(sorted(set(a) | set(b)))}
        a = [table[c] for c in a]
        b = [table[c] for c in b]
        if len(table) == classes:
            return a, b
        classes = len(table)


def find_isomorphism(l1: FiniteLattice, l2: FiniteLattice) -> Optional[dict[int, int]]:
    """An order isomorphism ``l1 -> l2``, or ``None``.

    Individualize-and-refine: colour both Hasse diagrams by refinement, then
    pin one element of the smallest ambiguous colour class to each candidate
    partner in turn and refine again.  A Hasse-diagram isomorphism is an order
    isomorphism.
    """
    if l1.n != l2.n or len(l1.covers) != len(l2.covers):
        return None
    edges2 = set(l2.covers)

    def search(ca: list, cb: list) -> Optional[dict[int, int]]:
        if sorted(ca) != sorted(cb):
            return None
        groups: dict[int, list[int]] = {}
        for x, c in enumerate(ca):
            groups.setdefault(c, []).append(x)
        ambiguous = [g for g in groups.values() if len(g) > 1]
        if not ambiguous:
            where = {c: y for y, c in enumerate(cb)}
            f = {x: where[c] for x, c in enumerate(ca)}
            return f if all((f[u], f[v]) in edges2 for u, v in l1.covers) else None
        g = min(ambiguous, key=lambda g: (len(g), g[0]))
        x, c = g[0], ca[g[0]]
        fresh = max(max(ca), max(cb)) + 1
        for y in [y for y, cy in enumerate(cb) if cy == c]:
            na, nb = list(ca), list(cb)
            na[x] = nb[y] = fresh
            found = search(*_refine(l1, l2, na, nb))
            if found is not None:
                return found
        return None

    sa = [(bin(l1.down[i]).count("1"), bin(l1.up[i]).count("1")) for i in range(l1.n)]
    sb = [(bin(l2.down[i]).count("1"), bin(l2.up[i]).count("1")) for i in range(l2.n)]
    table = {c: k for k, c in enumerate(sorted(set(sa) | set(sb)))}
    return search(*_refine(l1, l2, [table[c] for c in sa], [table[c] for c in sb]))


def order_isomorphic_by_map(l1: FiniteLattice, l2: FiniteLattice, f: Callable[[int], int]) -> bool:
    """Whether the given element map is a bijection that preserves and reflects order."""
    image = [f(i) for i in range(l1.n)]
    if sorted(image) != list(range(l2.n)):
        return False
    return all(l1.leq(a, b) == l2.leq(image[a], image[b]) for a in range(l1.n) for b in range(l1.n))


# ---------------------------------------------------------------- semidistributivity


def _sd_meet(L: FiniteLattice) -> Optional[tuple[int, int, int]]:
    for z in range(L.n):
        classes: dict[int, list[int]] = {}
        for x in range(L.n):
            classes.setdefault(L.meet(x, z), []).append(x)
        for m, xs in classes.items():
            top = L.join_all(xs)
            if L.meet(top, z) != m:
                # find a concrete failing pair for the report
                for x, y in combinations(xs, 2):
                    if L.meet(L.join(x, y), z) != m:
                        return (x, y, z)
                return (xs[0], xs[-1], z)
    return None


def _sd_join(L: FiniteLattice) -> Optional[tuple[int, int, int]]:
    for z in range(L.n):
        classes: dict[int, list[int]] = {}
        for x in range(L.n):
            classes.setdefault(L.join(x, z), []).append(x)
        for m, xs in classes.items():
            bot = L.meet_all(xs)
            if L.join(bot, z) != m:
                for x, y in combinations(xs, 2):
                    if L.join(L.meet(x, y), z) != m:
                        return (x, y, z)
                return (xs[0], xs[-1], z)
    return None


def is_semidistributive(L: FiniteLattice) -> bool:
    """Both semidistributive laws.

    For fixed ``z`` the elements with a common ``x ^ z`` form a class; the meet
    law holds for every pair in the class iff it holds for the join of the
    whole class, so each ``z`` costs one pass.
    """
    return _sd_meet(L) is None and _sd_join(L) is None


def semidistributivity_witness(L: FiniteLattice) -> Optional[tuple[str, tuple[int, int, int]]]:
    w = _sd_meet(L)
    if w is not None:
        return ("meet", w)
    w = _sd_join(L)
    if w is not None:
        return ("join", w)
    return None


# ---------------------------------------------------------------- labelings


Labeling = dict  # (lower index, upper index) -> label


@dataclass
class CUReport:
    ok: bool
    axiom: Optional[str] = None
    witness: tuple = ()
    message: str = ""

    def to_json(self) -> dict:
        return {"ok": self.ok, "axiom": self.axiom, "witness": [str(w) for w in self.witness], "message": self.message}


def lambda_down(L: FiniteLattice, lab: Labeling, x: int) -> set:
    return {lab[(y, x)] for y in L.lower_covers[x]}


def lambda_up(L: FiniteLattice, lab: Labeling, x: int) -> set:
    return {lab[(x, z)] for z in L.upper_covers[x]}


def _check_cn(L: FiniteLattice, lab: Labeling, lt: Callable, tag: str) -> Optional[CUReport]:
    for z in range(L.n):
        ups = L.upper_covers[z]
        for x in ups:
            for y in ups:
                if x == y:
                    continue
                t = L.join(x, y)
                lzx, lzy = lab[(z, x)], lab[(z, y)]
                for chain in L.maximal_chains(z, t, through=x):
                    edges = list(zip(chain, chain[1:]))
                    if lab[edges[-1]] != lzy:
                        return CUReport(False, "CN1" + tag, (z, x, y, chain),
                                        f"top edge of a chain through {x} does not carry the label of ({z}, {y})")
                    for u, v in edges[1:-1]:
                        if not (lt(lzx, lab[(u, v)]) and lt(lzy, lab[(u, v)])):
                            return CUReport(False, "CN2" + tag, (z, x, y, (u, v)),
                                            f"interior edge ({u}, {v}) is not above both bottom labels")
                    labels = [lab[e] for e in edges]
                    if len(set(labels)) != len(labels):
                        return CUReport(False, "CN3" + tag, (z, x, y, chain), "repeated label on a maximal chain")
    return None


def verify_cu_labeling(L: FiniteLattice, lab: Labeling, lt: Callable[[object, object], bool]) -> CUReport:
    """Check CU1 and CU2, then CN1-CN3 on ``L`` and on its dual.

    ``lt`` is the strict order on labels used by CN2.  The first violated
    axiom is reported with a witness.
    """
    missing = [c for c in L.covers if c not in lab]
    if missing:
        return CUReport(False, "total", tuple(missing[:1]), "labeling is not defined on every cover")
    seen: dict = {}
    for j in L.join_irreducibles():
        s = lab[(L.lower_covers[j][0], j)]
        if s in seen:
            return CUReport(False, "CU1", (seen[s], j, s), "two join-irreducibles share a label")
        seen[s] = j
    seen = {}
    for m in L.meet_irreducibles():
        s = lab[(m, L.upper_covers[m][0])]
        if s in seen:
            return CUReport(False, "CU2", (seen[s], m, s), "two meet-irreducibles share a label")
        seen[s] = m
    r = _check_cn(L, lab, lt, "")
    if r:
        return r
    # the dual: covers reversed, labels carried along
    dual_lab = {(b, a): lab[(a, b)] for a, b in L.covers}

    class _Dual:
        n = L.n
        upper_covers = L.lower_covers
        join = staticmethod(L.meet)

        @staticmethod
        def maximal_chains(a, b, through=None):
            return [tuple(reversed(c)) for c in L.maximal_chains(b, a, through)]

    r = _check_cn(_Dual, dual_lab, lt, "*")  # type: ignore[arg-type]
    return r or CUReport(True)


def ji_of_label(L: FiniteLattice, lab: Labeling) -> dict:
    """Label -> the join-irreducible whose unique lower cover edge carries it."""
    return {lab[(L.lower_covers[j][0], j)]: j for j in L.join_irreducibles()}


def mi_of_label(L: FiniteLattice, lab: Labeling) -> dict:
    return {lab[(m, L.upper_covers[m][0])]: m for m in L.meet_irreducibles()}


# ---------------------------------------------------------------- canonical joins


def canonical_join_rep(L: FiniteLattice, lab: Labeling, x: int) -> frozenset[int]:
    by_label = ji_of_label(L, lab)
    return frozenset(by_label[s] for s in lambda_down(L, lab, x))


def canonical_join_rep_oracle(L: FiniteLattice, x: int) -> frozenset[int]:
    """Label-free: for each lower cover ``y`` the least element below ``x`` and not below ``y``."""
    out = set()
    for y in L.lower_covers[x]:
        cands = L.down[x] & ~L.down[y]
        j = (cands & -cands).bit_length() - 1
        if cands & ~L.up[j]:
            raise NotALattice(f"no least element of [.., {x}] outside [.., {y}]", (x, y))
        out.add(j)
    return frozenset(out)


def refines_all_irredundant(L: FiniteLattice, x: int, D: frozenset[int], limit: int = 12) -> Optional[bool]:
    """Brute force: ``D`` joins to ``x`` and refines every irredundant join representation of ``x``.

    Returns ``None`` when more than ``limit`` join-irreducibles lie below ``x``.
    """
    if L.join_all(D) != x:
        return False
    below = [j for j in L.join_irreducibles() if L.leq(j, x)]
    if len(below) > limit:
        return None
    for r in range(len(below) + 1):
        for A in combinations(below, r):
            if L.join_all(A) != x:
                continue
            if any(L.join_all(A[:i] + A[i + 1 :]) == x for i in range(len(A))):
                continue
            if not all(any(L.leq(d, a) for a in A) for d in D):
                return False
    return True


@dataclass
class CJComplex:
    vertices: list[int]
    faces: list[frozenset[int]]  # indexed like the lattice elements
    is_flag: bool

    @property
    def edges(self) -> list[frozenset[int]]:
        return [f for f in self.faces if len(f) == 2]


def _cliques(vertices: list[int], adj: dict[int, set[int]]) -> set[frozenset[int]]:
    out: set[frozenset[int]] = {frozenset()}

    def grow(clique: tuple[int, ...], cands: list[int]) -> None:
        for k, v in enumerate(cands):
            c = clique + (v,)
            out.add(frozenset(c))
            grow(c, [u for u in cands[k + 1 :] if u in adj[v]])

    grow((), sorted(vertices))
    return out


def canonical_join_complex(L: FiniteLattice, lab: Labeling) -> CJComplex:
    faces = [canonical_join_rep(L, lab, x) for x in range(L.n)]
    vertices = sorted(L.join_irreducibles())
    adj: dict[int, set[int]] = {v: set() for v in vertices}
    for f in faces:
        if len(f) == 2:
            a, b = sorted(f)
            adj[a].add(b)
            adj[b].add(a)
    flag = _cliques(vertices, adj) == set(faces) and len(set(faces)) == len(faces)
    return CJComplex(vertices, faces, flag)


def cjc_criterion_faces(bic) -> set[frozenset]:
    """Label sets passing the pairwise criterion for biclosed-set lattices.

    Two labels are compatible when their base strings differ, neither base is a
    concatenation of two or more members of the union of their J sets, and the
    J sets are incomparable.  Faces are the cliques of compatibility.
    """
    labels = list(bic.labels)
    jsets = {s: bic.J(s) for s in labels}
    adj: dict[int, set[int]] = {i: set() for i in range(len(labels))}
    for i, j in combinations(range(len(labels)), 2):
        a, b = labels[i], labels[j]
        if a.base == b.base:
            continue
        ja, jb = jsets[a], jsets[b]
        if ja <= jb or jb <= ja:
            continue
        pool = ja | jb
        if bic.is_multi_concatenation(a.base, pool) or bic.is_multi_concatenation(b.base, pool):
            continue
        adj[i].add(j)
        adj[j].add(i)
    return {frozenset(labels[i] for i in c) for c in _cliques(list(range(len(labels))), adj)}


# ---------------------------------------------------------------- shards


@dataclass
class ShardOrder:
    psi: list[frozenset]  # indexed like the lattice elements
    injective: bool
    lattice: Optional[FiniteLattice] = field(default=None, repr=False)
    lattice_error: Optional[str] = None

    @property
    def is_lattice(self) -> bool:
        return self.lattice is not None


def psi(L: FiniteLattice, lab: Labeling, x: int) -> frozenset:
    lows = L.lower_covers[x]
    if not lows:
        return frozenset()
    m = L.meet_all(lows)
    box = L.up[m] & L.down[x]
    return frozenset(lab[(w, z)] for w, z in L.covers if box >> w & 1 and box >> z & 1)


def inclusion_covers(sets: Sequence[frozenset]) -> list[tuple[int, int]]:
    """Hasse diagram of a family of distinct sets ordered by inclusion."""
    n = len(sets)
    below = [0] * n
    for i in range(n):
        for j in range(n):
            if i != j and sets[j] < sets[i]:
                below[i] |= 1 << j
    out = []
    for i in range(n):
        for j in _bits(below[i]):
            # j covered by i unless some k sits strictly between
            if not any(below[k] >> j & 1 for k in _bits(below[i])):
                out.append((j, i))
    return out


def shard_order(L: FiniteLattice, lab: Labeling) -> ShardOrder:
    sets = [psi(L, lab, x) for x in range(L.n)]
    distinct = sorted(set(sets), key=lambda s: (len(s), sorted(map(_key, s))))
    injective = len(distinct) == len(sets)
    try:
        lat = FiniteLattice(distinct, [(distinct[a], distinct[b]) for a, b in inclusion_covers(distinct)])
        return ShardOrder(sets, injective, lat)
    except NotALattice as e:
        return ShardOrder(sets, injective, None, str(e))


def _key(x):
    return x.sort_key() if hasattr(x, "sort_key") else x


# ---------------------------------------------------------------- congruences, polygons


def is_congruence(L: FiniteLattice, partition: Iterable[Iterable[int]]) -> bool:
    block = [-1] * L.n
    blocks = [list(b) for b in partition]
    for k, b in enumerate(blocks):
        for x in b:
            if block[x] != -1:
                raise ValueError(f"element {x} lies in two blocks")
            block[x] = k
    if -1 in block:
        raise ValueError("partition does not cover the lattice")
    for b in blocks:
        for x, y in combinations(b, 2):
            for t in range(L.n):
                if block[L.join(x, t)] != block[L.join(y, t)] or block[L.meet(x, t)] != block[L.meet(y, t)]:
                    return False
    return True


def is_polygon(L: FiniteLattice, lo: int, hi: int) -> bool:
    """Exactly two maximal chains in ``[lo, hi]``, meeting only at the ends."""
    chains = L.maximal_chains(lo, hi)
    if len(chains) != 2:
        return False
    a, b = (set(c[1:-1]) for c in chains)
    return not (a & b) and bool(a) and bool(b)


def is_polygonal(L: FiniteLattice) -> bool:
    L = getattr(L, "L", L)  # accept anything wrapping a lattice
    for x in range(L.n):
        for y, z in combinations(L.upper_covers[x], 2):
            if not is_polygon(L, x, L.join(y, z)):
                return False
        for y, z in combinations(L.lower_covers[x], 2):
            if not is_polygon(L, L.meet(y, z), x):
                return False
    return True
