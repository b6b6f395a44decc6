"""Brute-force count of semistable representations over a small finite field.

Independent of the HN recursion: every point of ``Rep_Q(m)(F_q)`` is
enumerated and tested against every destabilizing tuple of subspaces.
Subspaces are enumerated by reduced row echelon forms; the subrepresentation
test ``u_e(U_s) <= U_t`` is linear in the point, so each subspace tuple
becomes one linear map and a point is unstable iff it lies in one of the
kernels.  Kernel membership is tested for all points at once with numpy.
"""
from __future__ import annotations

from itertools import combinations, product
from typing import Iterator

import numpy as np

from .quiver import Quiver, dim_vector
from .stability import StabilityXi, slope_xi, sub_vectors

__all__ = ["FiniteField", "OracleGuardError", "subspaces", "brute_force_ss_count", "GUARD"]

GUARD = 2 ** 24
_CHUNK = 1 << 15


class OracleGuardError(ValueError):
    pass


class FiniteField:
    """``F_q`` for a prime ``q`` or ``q = 4``, elements encoded as ``0..q-1``."""

    def __init__(self, q: int):
        self.q = q
        if q == 4:
            add = np.array([[a ^ b for b in range(4)] for a in range(4)], dtype=np.int64)
            mul = np.array([[_gf4_mul(a, b) for b in range(4)] for a in range(4)], dtype=np.int64)
        elif q >= 2 and all(q % p for p in range(2, int(q ** 0.5) + 1)):
            r = np.arange(q)
            add = (r[:, None] + r[None, :]) % q
            mul = (r[:, None] * r[None, :]) % q
        else:
            raise ValueError(f"unsupported field size {q}")
        self.add, self.mul = add, mul
        self.neg = np.array([int(np.where(add[a] == 0)[0][0]) for a in range(q)], dtype=np.int64)
        self.inv = np.array([0] + [int(np.where(mul[a] == 1)[0][0]) for a in range(1, q)], dtype=np.int64)

    def elements(self) -> range:
        return range(self.q)

    def dot_rows(self, X: np.ndarray, L: np.ndarray) -> np.ndarray:
        """``X @ L.T`` over the field; ``X`` is (points, n), ``L`` is (k, n)."""
        out = np.zeros((X.shape[0], L.shape[0]), dtype=np.int64)
        for r in range(L.shape[0]):
            acc = np.zeros(X.shape[0], dtype=np.int64)
            for j in np.nonzero(L[r])[0]:
                acc = self.add[acc, self.mul[X[:, j], L[r, j]]]
            out[:, r] = acc
        return out


def _gf4_mul(a: int, b: int) -> int:
    # F_2[x]/(x^2 + x + 1)
    r = 0
    for i in range(2):
        if (b >> i) & 1:
            r ^= a << i
    if r & 4:
        r ^= 0b111
    return r


def subspaces(F: FiniteField, n: int, k: int) -> Iterator[tuple[list, np.ndarray]]:
    """Yield ``(pivots, R)`` for every ``k``-dim subspace of ``F^n`` (``R`` in RREF)."""
    for piv in combinations(range(n), k):
        free = [(i, c) for i, p in enumerate(piv) for c in range(p + 1, n) if c not in piv]
        for vals in product(F.elements(), repeat=len(free)):
            R = np.zeros((k, n), dtype=np.int64)
            for i, p in enumerate(piv):
                R[i, p] = 1
            for (i, c), x in zip(free, vals):
                R[i, c] = x
            yield list(piv), R


def _annihilator(F: FiniteField, n: int, piv: list, R: np.ndarray) -> np.ndarray:
    """Rows whose common kernel is the row space of ``R``."""
    rows = []
    for c in range(n):
        if c in piv:
            continue
        row = np.zeros(n, dtype=np.int64)
        row[c] = 1
        for i, p in enumerate(piv):
            row[p] = F.neg[R[i, c]]
        rows.append(row)
    return np.array(rows, dtype=np.int64).reshape(len(rows), n)


def _edge_layout(Q: Quiver, m: tuple) -> list[int]:
    offs, o = [], 0
    for s, t in Q.edges:
        offs.append(o)
        o += m[s] * m[t]
    offs.append(o)
    return offs


def _closure_map(F, Q, m, offs, subs) -> np.ndarray:
    """Linear conditions (one per row) for ``u_e(U_s) <= U_t`` on all edges."""
    n = offs[-1]
    rows = []
    for e, (s, t) in enumerate(Q.edges):
        P = subs[t][0]   # annihilator of U_t, (m_t - d_t) x m_t
        B = subs[s][1]   # basis of U_s as rows, d_s x m_s
        if P.shape[0] == 0 or B.shape[0] == 0:
            continue
        for a in range(P.shape[0]):
            for b in range(B.shape[0]):
                row = np.zeros(n, dtype=np.int64)
                for c in range(m[t]):
                    if P[a, c] == 0:
                        continue
                    for d in range(m[s]):
                        if B[b, d]:
                            # coordinate of u_e[c, d] (row-major, m_t x m_s)
                            row[offs[e] + c * m[s] + d] = F.mul[P[a, c], B[b, d]]
                if row.any():
                    rows.append(row)
    return np.array(rows, dtype=np.int64).reshape(len(rows), n)


def _destabilizing_maps(F, Q, xi, m, offs) -> list[np.ndarray]:
    mu = slope_xi(xi, m)
    per_vertex: dict[tuple[int, int], list] = {}

    def subs_of(i, d):
        key = (i, d)
        if key not in per_vertex:
            per_vertex[key] = [(_annihilator(F, m[i], piv, R), R) for piv, R in subspaces(F, m[i], d)]
        return per_vertex[key]

    maps = []
    for d in sub_vectors(m, proper=True):
        if slope_xi(xi, d) <= mu:
            continue
        for combo in product(*(subs_of(i, d[i]) for i in range(Q.n))):
            maps.append(_closure_map(F, Q, m, offs, combo))
    return maps


def _rref_rows(F: FiniteField, L: np.ndarray) -> np.ndarray:
    """Nonzero rows of the reduced row echelon form of ``L`` (same kernel)."""
    A = L.copy()
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if A[i, c]), None)
        if p is None:
            continue
        A[[r, p]] = A[[p, r]]
        A[r] = F.mul[A[r], F.inv[A[r, c]]]
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] = F.add[A[i], F.mul[F.neg[A[i, c]], A[r]]]
        r += 1
    return A[:r]


def _all_points(q: int, n: int) -> np.ndarray:
    idx = np.arange(q ** n, dtype=np.int64)
    weights = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // weights[None, :]) % q


def brute_force_ss_count(Q: Quiver, xi: StabilityXi, m, q: int) -> int:
    """Number of ``xi``-semistable points of ``Rep_Q(m)(F_q)`` (not divided by ``|G|``).

    The coordinates are split into halves ``x = (x_hi, x_lo)``; a point is in
    the kernel of a closure map ``L`` iff ``L_lo x_lo = -L_hi x_hi``, so each
    half is evaluated once and the residue vectors are compared as integer
    codes over the full product of the halves.
    """
    m = dim_vector(Q, m)
    if not any(m):
        raise ValueError("dimension vector must be nonzero")
    F = FiniteField(q)
    offs = _edge_layout(Q, m)
    n = offs[-1]
    total = q ** n
    if total > GUARD:
        raise OracleGuardError(f"|Rep_Q(m)(F_{q})| = {q}^{n} exceeds the guard {GUARD}")
    maps = _destabilizing_maps(F, Q, xi, m, offs)
    if any(L.shape[0] == 0 for L in maps):
        return 0  # some destabilizing subspace tuple is closed at every point
    if not maps:
        return total
    kernels = {}
    for L in maps:
        R = _rref_rows(F, L)
        kernels.setdefault(R.tobytes() + bytes(R.shape), R)
    k = n // 2
    X_hi, X_lo = _all_points(q, n - k), _all_points(q, k)
    codes = []
    for R in kernels.values():
        w = q ** np.arange(R.shape[0], dtype=np.int64)
        lo = F.dot_rows(X_lo, R[:, n - k:]) @ w
        hi = F.neg[F.dot_rows(X_hi, R[:, :n - k])] @ w
        codes.append((hi, lo))
    block = max(1, _CHUNK // len(X_lo))
    count = 0
    for b in range(0, len(X_hi), block):
        unstable = np.zeros((min(block, len(X_hi) - b), len(X_lo)), dtype=bool)
        for hi, lo in codes:
            unstable |= hi[b:b + block, None] == lo[None, :]
        count += int(unstable.size - unstable.sum())
    return count
