"""Quivers, the Euler form, and finite-field stack counts.

Stack counts are returned as rational functions in ``q``; the BPS layer
substitutes ``q = v**2`` itself.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .arith import LaurentPoly, RationalFunction

__all__ = [
    "Quiver",
    "SymmetryWarning",
    "dim_vector",
    "is_symmetric",
    "euler_form",
    "gl_order",
    "stack_count",
    "stack_count_product_form",
    "det_character",
    "ext_quiver",
    "jordan_quiver",
    "loop_quiver",
    "a1_quiver",
    "kronecker_quiver",
    "qbar_quiver",
]


class SymmetryWarning(UserWarning):
    pass


@dataclass(frozen=True)
class Quiver:
    """Directed multigraph; edges are ``(source, target)`` vertex indices."""

    vertices: tuple = ()
    edges: tuple = ()
    _adj: tuple = field(default=(), init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        edges = tuple((int(s), int(t)) for s, t in self.edges)
        n = len(self.vertices)
        for s, t in edges:
            if not (0 <= s < n and 0 <= t < n):
                raise ValueError(f"edge ({s}, {t}) out of range for {n} vertices")
        object.__setattr__(self, "edges", edges)
        adj = [[0] * n for _ in range(n)]
        for s, t in edges:
            adj[s][t] += 1
        object.__setattr__(self, "_adj", tuple(tuple(r) for r in adj))

    @classmethod
    def from_counts(cls, counts: Sequence[Sequence[int]], labels=None) -> "Quiver":
        n = len(counts)
        edges = [(i, j) for i in range(n) for j in range(n) for _ in range(counts[i][j])]
        return cls(tuple(labels) if labels else tuple(str(i) for i in range(n)), tuple(edges))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def arrows(self, i: int, j: int) -> int:
        return self._adj[i][j]

    def adjacency(self) -> tuple:
        return self._adj

    def loops(self, i: int) -> int:
        return self._adj[i][i]


def dim_vector(Q: Quiver, m) -> tuple:
    m = tuple(int(x) for x in m)
    if len(m) != Q.n:
        raise ValueError(f"dimension vector {m} has length {len(m)}, quiver has {Q.n} vertices")
    if any(x < 0 for x in m):
        raise ValueError(f"dimension vector {m} has a negative entry")
    return m


def is_symmetric(Q: Quiver) -> bool:
    A = Q.adjacency()
    return all(A[i][j] == A[j][i] for i in range(Q.n) for j in range(i + 1, Q.n))


def euler_form(Q: Quiver, a, b) -> int:
    """``<a,b> = sum_i a_i b_i - sum_e a_s(e) b_t(e)``."""
    a, b = dim_vector_any(Q, a), dim_vector_any(Q, b)
    return sum(x * y for x, y in zip(a, b)) - sum(a[s] * b[t] for s, t in Q.edges)


def dim_vector_any(Q: Quiver, m) -> tuple:
    # same length check, sign unrestricted (the form is bilinear over Z)
    m = tuple(int(x) for x in m)
    if len(m) != Q.n:
        raise ValueError(f"dimension vector {m} has length {len(m)}, quiver has {Q.n} vertices")
    return m


_Q = LaurentPoly.monomial(1, var="q")
_ONE_Q = LaurentPoly.const(1, var="q")


@lru_cache(maxsize=None)
def gl_order(n: int) -> RationalFunction:
    """``|GL_n(F_q)| = q^(n(n-1)/2) prod_{i<=n} (q^i - 1)``."""
    if n < 0:
        raise ValueError("gl_order requires n >= 0")
    p = LaurentPoly.monomial(n * (n - 1) // 2, var="q")
    for i in range(1, n + 1):
        p = p * (LaurentPoly.monomial(i, var="q") - 1)
    return RationalFunction(p)


def _rep_dim(Q: Quiver, m: tuple) -> int:
    return sum(m[s] * m[t] for s, t in Q.edges)


@lru_cache(maxsize=None)
def _stack_count(Q: Quiver, m: tuple) -> RationalFunction:
    den = RationalFunction(_ONE_Q)
    for mi in m:
        den = den * gl_order(mi)
    return RationalFunction(LaurentPoly.monomial(_rep_dim(Q, m), var="q")) / den


def stack_count(Q: Quiver, m) -> RationalFunction:
    """``|Rep_Q(m)(F_q)| / |G_m(F_q)|`` as a rational function of ``q``."""
    return _stack_count(Q, dim_vector(Q, m))


def stack_count_product_form(Q: Quiver, m) -> RationalFunction:
    """The same count written as ``q^-<m,m> prod_i prod_j (1 - q^-j)^-1``."""
    m = dim_vector(Q, m)
    out = RationalFunction(LaurentPoly.monomial(-euler_form(Q, m, m), var="q"))
    for mi in m:
        for j in range(1, mi + 1):
            out = out / (1 - LaurentPoly.monomial(-j, var="q"))
    return out


def det_character(Q: Quiver, m) -> tuple:
    """Exponents of ``det g_i`` in the character of ``G`` on ``det Rep_Q(m)``.

    Each edge ``e`` contributes ``(det g_s)^m_t (det g_t)^-m_s``.
    """
    m = dim_vector(Q, m)
    out = [0] * Q.n
    for s, t in Q.edges:
        out[s] += m[t]
        out[t] -= m[s]
    return tuple(out)


def ext_quiver(ext: Sequence[Sequence[int]], labels=None) -> Quiver:
    """Quiver with ``ext[i][j]`` arrows ``i -> j``.

    Warns with :class:`SymmetryWarning` when ``ext`` is not symmetric: Ext
    quivers of collections on a CY3 are symmetric by Serre duality.
    """
    k = len(ext)
    for row in ext:
        if len(row) != k:
            raise ValueError("Ext matrix must be square")
        if any(int(x) < 0 for x in row):
            raise ValueError("Ext matrix entries must be nonnegative")
    Q = Quiver.from_counts([[int(x) for x in row] for row in ext], labels)
    if not is_symmetric(Q):
        warnings.warn(
            "Ext matrix is not symmetric, but the Ext-quiver of a polystable "
            "collection on a CY 3-fold must be symmetric",
            SymmetryWarning,
            stacklevel=2,
        )
    return Q


def loop_quiver(g: int) -> Quiver:
    return Quiver(("0",), ((0, 0),) * g)


def a1_quiver() -> Quiver:
    return loop_quiver(0)


def jordan_quiver() -> Quiver:
    return loop_quiver(1)


def kronecker_quiver(arrows: int = 2) -> Quiver:
    return Quiver(("1", "2"), ((0, 1),) * arrows)


def qbar_quiver() -> Quiver:
    """Two vertices with one arrow in each direction."""
    return Quiver(("1", "2"), ((0, 1), (1, 0)))
