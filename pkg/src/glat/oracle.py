"""Linear algebra over the two-element field, used as an independent check on
the combinatorial Hom and quotient formulas for string modules."""
from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

from .strings import StringWord, word_vertices


def rank_gf2(m: np.ndarray) -> int:
    a = (np.array(m, dtype=np.uint8) & 1).copy()
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        pivots = np.nonzero(a[r:, c])[0]
        if pivots.size == 0:
            continue
        k = r + pivots[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        hit = np.nonzero(a[:, c])[0]
        hit = hit[hit != r]
        a[hit] ^= a[r]
        r += 1
        if r == rows:
            break
    return r


def nullspace_gf2(m: np.ndarray) -> list[np.ndarray]:
    """A basis of ``{x : m x = 0}``."""
    a = (np.array(m, dtype=np.uint8) & 1).copy()
    rows, cols = a.shape
    pivot_cols = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivots = np.nonzero(a[r:, c])[0]
        if pivots.size == 0:
            continue
        k = r + pivots[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        hit = np.nonzero(a[:, c])[0]
        hit = hit[hit != r]
        a[hit] ^= a[r]
        pivot_cols.append(c)
        r += 1
    free = [c for c in range(cols) if c not in set(pivot_cols)]
    basis = []
    for f in free:
        x = np.zeros(cols, dtype=np.uint8)
        x[f] = 1
        for row, pc in enumerate(pivot_cols):
            x[pc] = a[row, f]
        basis.append(x)
    return basis


class StringRep:
    """The string module of a word as explicit matrices over GF(2).

    Basis vector ``i`` sits at vertex ``v_i``.  A direct letter ``i`` sends
    ``b_{i+1}`` to ``b_i``; an inverse letter sends ``b_i`` to ``b_{i+1}``.
    """

    def __init__(self, pp, w: StringWord):
        self.pp = pp
        self.w = w
        vs = word_vertices(pp, w)
        self.slots: dict[str, list[int]] = {v: [] for v in pp.vertices}
        for i, v in enumerate(vs):
            self.slots[v].append(i)
        self.vertex_of = vs
        self.dim = len(vs)
        self.local = {i: self.slots[v].index(i) for i, v in enumerate(vs)}
        # arrow key -> (row, column) entries equal to one, in local coordinates
        self.pairs: dict = {key: [] for key in pp.ends}
        for i, x in enumerate(w.letters):
            src, dst = (i, i + 1) if x.inverse else (i + 1, i)
            self.pairs[x.key].append((self.local[dst], self.local[src]))

    def dim_at(self, v: str) -> int:
        return len(self.slots[v])


def _hom_equations(M: StringRep, N: StringRep) -> tuple[list[int], dict, int]:
    """Equations ``N_a F_s = F_t M_a`` for every arrow ``a: s -> t``, one row per matrix entry.

    Rows are bit masks over the unknowns; ``F_v[r, c]`` is bit
    ``layout[v][0] + r * cols + c``.
    """
    layout = {}
    off = 0
    for v in M.pp.vertices:
        shape = (N.dim_at(v), M.dim_at(v))
        layout[v] = (off, shape)
        off += shape[0] * shape[1]
    rows = []
    for key, (s, t) in M.pp.ends.items():
        os_, (_, cs) = layout[s]
        ot, (_, ct) = layout[t]
        n_into = {}
        for dst, src in N.pairs[key]:
            n_into.setdefault(dst, []).append(src)
        m_from = {}
        for dst, src in M.pairs[key]:
            m_from.setdefault(src, []).append(dst)
        for r in range(N.dim_at(t)):
            for c in range(M.dim_at(s)):
                eq = 0
                for k in n_into.get(r, ()):
                    eq ^= 1 << (os_ + k * cs + c)
                for k in m_from.get(c, ()):
                    eq ^= 1 << (ot + r * ct + k)
                if eq:
                    rows.append(eq)
    return rows, layout, off


def _rank_rows(rows: list[int]) -> int:
    basis: dict[int, int] = {}
    for x in rows:
        while x:
            hi = x.bit_length() - 1
            if hi not in basis:
                basis[hi] = x
                break
            x ^= basis[hi]
    return len(basis)


def hom_basis(M: StringRep, N: StringRep) -> tuple[list[np.ndarray], dict]:
    """Basis of Hom(M, N) as flat vectors, plus the layout of the unknowns."""
    rows, layout, off = _hom_equations(M, N)
    if off == 0:
        return [], layout
    if not rows:
        return [np.eye(off, dtype=np.uint8)[i] for i in range(off)], layout
    eqs = np.array([[(x >> i) & 1 for i in range(off)] for x in rows], dtype=np.uint8)
    return nullspace_gf2(eqs), layout


@lru_cache(maxsize=4096)
def _rep(pp, w: StringWord) -> StringRep:
    return StringRep(pp, w)


def hom_dim_oracle(pp, w1: StringWord, w2: StringWord) -> int:
    rows, _, off = _hom_equations(_rep(pp, w1), _rep(pp, w2))
    return off - _rank_rows(rows)


def has_surjection(pp, w: StringWord, u: StringWord, limit: int = 16) -> bool:
    """Search all of Hom(M(w), M(u)) for an epimorphism."""
    M, N = StringRep(pp, w), StringRep(pp, u)
    if any(N.dim_at(v) > M.dim_at(v) for v in pp.vertices):
        return False
    basis, layout = hom_basis(M, N)
    if not basis:
        return False
    if len(basis) > limit:
        raise ValueError(f"Hom space of dimension {len(basis)} is too large to search")
    B = np.array(basis)
    for coeffs in product((0, 1), repeat=len(basis)):
        if not any(coeffs):
            continue
        f = (np.array(coeffs, dtype=np.uint8) @ B) & 1
        ok = True
        for v in pp.vertices:
            o, (r, c) = layout[v]
            if r and rank_gf2(f[o : o + r * c].reshape(r, c)) < r:
                ok = False
                break
        if ok:
            return True
    return False
