"""Super-potentials on a quiver: cyclic words, trace functions, cyclic derivatives.

Conventions
-----------
A :class:`CyclicWord` lists edges in *path order* ``e_1, ..., e_n`` with
``t(e_i) = s(e_{i+1})``; its trace on a representation ``u`` is
``tr(u_{e_n} ... u_{e_1})``, the trace of the composed map.  Algebra
notation such as ``A[B, C] = ABC - ACB`` denotes composition, so ``ABC`` is
the path ``C, B, A``; :meth:`SuperPotential.from_products` does that
reversal.  With these conventions ``d tr W / d (u_e)_{ab} =
(cyclic_derivative(W, e)(u))_{ba}``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .arith import as_fraction
from .quiver import Quiver, dim_vector

__all__ = [
    "PotentialError",
    "CyclicWord",
    "SuperPotential",
    "MatrixTuple",
    "NCPolynomial",
    "eval_trW",
    "gauge_transform",
    "cyclic_derivative",
    "truncate",
    "check_growth",
    "w3_potential",
    "three_loop_quiver",
    "exact_inverse",
]


class PotentialError(ValueError):
    pass


def _canonical_rotation(edges: tuple) -> tuple:
    return min(edges[i:] + edges[:i] for i in range(len(edges)))


@dataclass(frozen=True)
class CyclicWord:
    edges: tuple

    def __post_init__(self):
        e = tuple(int(x) for x in self.edges)
        if not e:
            raise PotentialError("cyclic word must have length >= 1")
        object.__setattr__(self, "edges", _canonical_rotation(e))

    def __len__(self):
        return len(self.edges)

    def check(self, Q: Quiver) -> None:
        E = Q.edges
        for x in self.edges:
            if not 0 <= x < len(E):
                raise PotentialError(f"edge index {x} out of range")
        n = len(self.edges)
        for i in range(n):
            a, b = self.edges[i], self.edges[(i + 1) % n]
            if E[a][1] != E[b][0]:
                raise PotentialError(f"word {self.edges} is not a closed path")

    def rotations(self) -> list[tuple]:
        e = self.edges
        return [e[i:] + e[:i] for i in range(len(e))]


def three_loop_quiver() -> Quiver:
    return Quiver(("0",), ((0, 0),) * 3)


@dataclass(frozen=True)
class SuperPotential:
    """Finite sum of cyclic words with rational coefficients."""

    quiver: Quiver
    terms: tuple = ()
    growth: Fraction | None = None

    def __post_init__(self):
        acc: dict[CyclicWord, Fraction] = {}
        items = self.terms.items() if isinstance(self.terms, Mapping) else self.terms
        for w, a in items:
            w = w if isinstance(w, CyclicWord) else CyclicWord(tuple(w))
            w.check(self.quiver)
            acc[w] = acc.get(w, Fraction(0)) + as_fraction(a)
        terms = tuple(sorted(((w, a) for w, a in acc.items() if a), key=lambda t: (len(t[0]), t[0].edges)))
        object.__setattr__(self, "terms", terms)
        if self.growth is not None:
            C = as_fraction(self.growth)
            if C <= 0:
                raise PotentialError("growth constant must be positive")
            for w, a in terms:
                if not abs(a) < C ** len(w):
                    raise PotentialError(f"coefficient {a} of {w.edges} violates |a| < C^n with C = {C}")
            object.__setattr__(self, "growth", C)

    @classmethod
    def from_products(cls, quiver: Quiver, products: Iterable[tuple[object, Sequence[int]]], growth=None):
        """Build from ``(coeff, [e_1, ..., e_n])`` read as the composition ``e_1 e_2 ... e_n``."""
        return cls(quiver, tuple((tuple(reversed(list(p))), c) for c, p in products), growth)

    @classmethod
    def from_generator(cls, quiver: Quiver, gen: Callable[[int], Iterable[tuple[Sequence[int], object]]],
                       degree: int, growth=None):
        """Truncation of a formal potential; ``gen(n)`` yields the length-``n`` terms."""
        terms = [(w, a) for n in range(1, degree + 1) for w, a in gen(n)]
        return cls(quiver, tuple(terms), growth)

    def degree(self) -> int:
        return max((len(w) for w, _ in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def to_json(self) -> dict:
        d = {"terms": [{"word": list(w.edges), "coeff": str(a)} for w, a in self.terms]}
        if self.growth is not None:
            d["growth"] = str(self.growth)
        return d


def w3_potential() -> SuperPotential:
    """``A[B, C]`` on the three-loop quiver (A, B, C = edges 0, 1, 2)."""
    return SuperPotential.from_products(three_loop_quiver(), [(1, [0, 1, 2]), (-1, [0, 2, 1])])


def _mat(x) -> np.ndarray:
    a = np.array(x, dtype=object)
    if a.ndim != 2:
        a = a.reshape(a.shape[0] if a.ndim else 0, -1) if a.size else a.reshape(0, 0)
    return np.vectorize(as_fraction, otypes=[object])(a) if a.size else a


def _eye(n: int) -> np.ndarray:
    e = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            e[i, j] = Fraction(int(i == j))
    return e


def exact_inverse(g: np.ndarray) -> np.ndarray:
    n = g.shape[0]
    if g.shape != (n, n):
        raise PotentialError("gauge matrix must be square")
    A = [list(map(as_fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(g)]
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            raise PotentialError("singular gauge matrix")
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [x / piv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            out[i, j] = A[i][n + j]
    return out


@dataclass(frozen=True)
class MatrixTuple:
    """A point of ``Rep_Q(m)``: one ``m_t x m_s`` matrix per edge."""

    quiver: Quiver
    dims: tuple
    mats: tuple = field(default=())

    def __post_init__(self):
        Q = self.quiver
        dims = dim_vector(Q, self.dims)
        object.__setattr__(self, "dims", dims)
        if len(self.mats) != len(Q.edges):
            raise PotentialError("one matrix per edge is required")
        mats = []
        for (s, t), u in zip(Q.edges, self.mats):
            u = _mat(u) if not (isinstance(u, np.ndarray) and u.dtype == object) else u
            if u.size == 0:
                u = np.empty((dims[t], dims[s]), dtype=object)
            if u.shape != (dims[t], dims[s]):
                raise PotentialError(f"edge matrix shape {u.shape} != {(dims[t], dims[s])}")
            mats.append(u)
        object.__setattr__(self, "mats", tuple(mats))

    def __eq__(self, other):
        if not isinstance(other, MatrixTuple):
            return NotImplemented
        return (self.quiver == other.quiver and self.dims == other.dims
                and all(np.array_equal(a, b) for a, b in zip(self.mats, other.mats)))

    def __hash__(self):
        return hash((self.quiver, self.dims))

    def path_matrix(self, path: Sequence[int], start: int) -> np.ndarray:
        """Matrix of the composed map along ``path``; empty path is the identity at ``start``."""
        M = _eye(self.dims[start])
        for e in path:
            M = self.mats[e].dot(M)
        return M

    def as_float(self) -> list[np.ndarray]:
        return [u.astype(float) for u in self.mats]


def eval_trW(W: SuperPotential, u: MatrixTuple) -> Fraction:
    if u.quiver != W.quiver:
        raise PotentialError("potential and matrix tuple live on different quivers")
    E = W.quiver.edges
    total = Fraction(0)
    for w, a in W.terms:
        start = E[w.edges[0]][0]
        total += a * Fraction(np.trace(u.path_matrix(w.edges, start)))
    return total


def gauge_transform(u: MatrixTuple, g: Sequence) -> MatrixTuple:
    """``u_e -> g_t^-1 u_e g_s``; a right action: ``(u.g).h = u.(gh)``."""
    Q = u.quiver
    if len(g) != Q.n:
        raise PotentialError("one gauge matrix per vertex is required")
    gs = [_mat(x) if u.dims[i] else np.empty((0, 0), dtype=object) for i, x in enumerate(g)]
    for i, x in enumerate(gs):
        if x.shape != (u.dims[i], u.dims[i]):
            raise PotentialError(f"gauge matrix at vertex {i} has shape {x.shape}")
    inv = [exact_inverse(x) if x.size else x for x in gs]
    mats = []
    for (s, t), m in zip(Q.edges, u.mats):
        mats.append(inv[t].dot(m).dot(gs[s]) if m.size else m)
    return MatrixTuple(Q, u.dims, tuple(mats))


@dataclass(frozen=True)
class NCPolynomial:
    """Linear combination of paths from ``start`` to ``end`` (path order)."""

    quiver: Quiver
    start: int
    end: int
    terms: tuple = ()

    def evaluate(self, u: MatrixTuple) -> np.ndarray:
        out = np.empty((u.dims[self.end], u.dims[self.start]), dtype=object)
        out[...] = Fraction(0)
        for path, a in self.terms:
            out = out + u.path_matrix(path, self.start) * a
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def to_string(self, names: Sequence[str] | None = None) -> str:
        """Algebra notation (composition order, so path ``C, B`` prints ``BC``)."""
        if not self.terms:
            return "0"
        names = names or [chr(ord("A") + i) if i < 26 else f"e{i}" for i in range(len(self.quiver.edges))]
        out = []
        for i, (path, a) in enumerate(self.terms):
            word = "".join(names[e] for e in reversed(path)) or "1"
            mag = abs(a)
            body = word if mag == 1 else f"{mag}*{word}"
            sep = ("-" if a < 0 else "") if i == 0 else (" - " if a < 0 else " + ")
            out.append(sep + body)
        return "".join(out)

    __str__ = to_string


def cyclic_derivative(W: SuperPotential, e: int) -> NCPolynomial:
    """``d_e W``: for each occurrence of ``e``, the rest of the cycle read from after it."""
    Q = W.quiver
    if not 0 <= e < len(Q.edges):
        raise PotentialError(f"edge index {e} out of range")
    s, t = Q.edges[e]
    acc: dict[tuple, Fraction] = {}
    for w, a in W.terms:
        n = len(w)
        for k in range(n):
            if w.edges[k] != e:
                continue
            path = tuple(w.edges[(k + 1 + j) % n] for j in range(n - 1))
            acc[path] = acc.get(path, Fraction(0)) + a
    terms = tuple(sorted(((p, a) for p, a in acc.items() if a), key=lambda x: (len(x[0]), tuple(reversed(x[0])))))
    return NCPolynomial(Q, t, s, terms)


def truncate(W: SuperPotential, N: int) -> SuperPotential:
    if N < 1:
        raise PotentialError("truncation degree must be >= 1")
    return SuperPotential(W.quiver, tuple((w, a) for w, a in W.terms if len(w) <= N), W.growth)


def check_growth(W: SuperPotential) -> Fraction:
    """Smallest power of two ``C`` with ``|a| < C^n`` for every term ``a * (length-n word)``."""
    best = Fraction(1) if not W.terms else None
    for w, a in W.terms:
        n, x = len(w), abs(a)
        # smallest integer k with 2^(k n) > x
        k = math.floor(math.log2(x) / n) - 2
        while Fraction(2) ** (k * n) <= x:
            k += 1
        while Fraction(2) ** ((k - 1) * n) > x:
            k -= 1
        C = Fraction(2) ** k
        if best is None or C > best:
            best = C
    return best
