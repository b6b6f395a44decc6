"""Arithmetic on ``Gamma_X = N_1(X) + Z`` and Gopakumar-Vafa extraction.

Curve classes are integer vectors in a fixed basis of ``N_1(X)``; divisors
and Kaehler data pair with them by the dot product.  Effectivity is given by
an explicit list of generators (see :class:`EffectiveCone`).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Sequence

from .arith import LaurentPoly, as_fraction, rational_gcd
from .stability import ExactComplex

__all__ = [
    "GammaError",
    "NonGenericError",
    "AsymmetricPhiError",
    "GammaClass",
    "KahlerParam",
    "EffectiveCone",
    "CycleData",
    "INF",
    "central_charge",
    "twisted_slope",
    "wall_membership",
    "effective_decompositions",
    "generic_delta",
    "delta_condition_holds",
    "flop_transform",
    "pairing_compatible",
    "blowup_pullback",
    "is_primitive",
    "gv_basis",
    "gv_extract",
    "gv_expand",
    "elliptic_phi",
    "zero_cycle_phi",
]

INF = math.inf


class GammaError(ValueError):
    pass


class NonGenericError(GammaError):
    pass


class AsymmetricPhiError(GammaError):
    def __init__(self, e: int, a, b):
        super().__init__(f"Phi is not symmetric under y -> 1/y: coefficient of y^{e} is {a}, of y^{-e} is {b}")
        self.exponents = (e, -e)


def _dot(a: Sequence, b: Sequence):
    if len(a) != len(b):
        raise GammaError(f"rank mismatch: {len(a)} vs {len(b)}")
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


@dataclass(frozen=True)
class GammaClass:
    beta: tuple
    m: int

    def __post_init__(self):
        object.__setattr__(self, "beta", tuple(int(x) for x in self.beta))
        object.__setattr__(self, "m", int(self.m))

    @property
    def rank(self) -> int:
        return len(self.beta)

    def __add__(self, other: "GammaClass") -> "GammaClass":
        return GammaClass(tuple(x + y for x, y in zip(self.beta, other.beta)), self.m + other.m)

    def __sub__(self, other: "GammaClass") -> "GammaClass":
        return GammaClass(tuple(x - y for x, y in zip(self.beta, other.beta)), self.m - other.m)

    def proportional(self, other: "GammaClass") -> bool:
        a = self.beta + (self.m,)
        b = other.beta + (other.m,)
        n = len(a)
        return all(a[i] * b[j] == a[j] * b[i] for i in range(n) for j in range(i + 1, n))

    def __str__(self) -> str:
        return f"({','.join(map(str, self.beta))};{self.m})"


@dataclass(frozen=True)
class EffectiveCone:
    generators: tuple

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        if not gens:
            raise GammaError("effective cone needs at least one generator")
        if any(not any(g) for g in gens):
            raise GammaError("effective cone generators must be nonzero")
        if len({len(g) for g in gens}) != 1:
            raise GammaError("generators have inconsistent rank")
        object.__setattr__(self, "generators", gens)

    @property
    def rank(self) -> int:
        return len(self.generators[0])

    def classes_below(self, omega: Sequence, bound) -> set[tuple]:
        """Effective classes (incl. 0) with ``omega . beta <= bound``."""
        w = [_dot(omega, g) for g in self.generators]
        if any(x <= 0 for x in w):
            raise GammaError("omega must be positive on every effective generator")
        caps = [int(math.floor(bound / x)) for x in w]
        out = set()
        for coeffs in product(*(range(c + 1) for c in caps)):
            if sum((c * x for c, x in zip(coeffs, w)), Fraction(0)) > bound:
                continue
            out.add(tuple(sum(c * g[i] for c, g in zip(coeffs, self.generators)) for i in range(self.rank)))
        return out


@dataclass(frozen=True)
class KahlerParam:
    B: tuple
    omega: tuple

    def __post_init__(self):
        object.__setattr__(self, "B", tuple(as_fraction(x) for x in self.B))
        object.__setattr__(self, "omega", tuple(as_fraction(x) for x in self.omega))
        if len(self.B) != len(self.omega):
            raise GammaError("B and omega must have the same rank")

    def check_ample(self, cone: EffectiveCone) -> None:
        for g in cone.generators:
            if _dot(self.omega, g) <= 0:
                raise GammaError(f"omega is not positive on effective generator {g}")


@dataclass(frozen=True)
class CycleData:
    """``gamma = sum a_i [C_i]``: pairs ``(multiplicity, class)``."""

    components: tuple

    def __post_init__(self):
        comps = []
        for a, cls in self.components:
            if int(a) < 1:
                raise GammaError("multiplicities must be >= 1")
            comps.append((int(a), tuple(int(x) for x in cls)))
        object.__setattr__(self, "components", tuple(comps))

    def total_class(self) -> tuple:
        if not self.components:
            return ()
        r = len(self.components[0][1])
        return tuple(sum(a * c[i] for a, c in self.components) for i in range(r))


def central_charge(sigma: KahlerParam, v: GammaClass) -> ExactComplex:
    """``Z(v) = -m + (B + i omega) . beta``."""
    return ExactComplex(-v.m + _dot(sigma.B, v.beta), _dot(sigma.omega, v.beta))


def twisted_slope(sigma: KahlerParam, v: GammaClass):
    """``(m - B.beta) / (omega.beta)``, or ``INF`` when ``omega.beta = 0``."""
    w = _dot(sigma.omega, v.beta)
    if w == 0:
        return INF
    return (v.m - _dot(sigma.B, v.beta)) / w


def _effective_pairs(beta: tuple, omega, cone: EffectiveCone) -> list[tuple]:
    bound = _dot(omega, beta)
    below = cone.classes_below(omega, bound)
    return sorted(b1 for b1 in below if tuple(x - y for x, y in zip(beta, b1)) in below)


def wall_membership(sigma: KahlerParam, v: GammaClass, cone: EffectiveCone, m_bound: int) -> list[tuple]:
    """Non-proportional ``v = v1 + v2`` with equal twisted slopes, ``|m_i| <= m_bound``.

    Each unordered pair is listed once, smaller ``v1`` first.
    """
    if m_bound < 0:
        raise GammaError("m_bound must be >= 0")
    sigma.check_ample(cone)
    out = []
    for b1 in _effective_pairs(v.beta, sigma.omega, cone):
        b2 = tuple(x - y for x, y in zip(v.beta, b1))
        for m1 in range(-m_bound, m_bound + 1):
            m2 = v.m - m1
            if abs(m2) > m_bound:
                continue
            v1, v2 = GammaClass(b1, m1), GammaClass(b2, m2)
            # zero-dimensional parts must have positive Euler characteristic
            if (not any(b1) and m1 <= 0) or (not any(b2) and m2 <= 0):
                continue
            if (v1.beta, v1.m) > (v2.beta, v2.m):
                continue
            if v1.proportional(v2):
                continue
            if twisted_slope(sigma, v1) == twisted_slope(sigma, v2):
                out.append((v1, v2))
    return out


def effective_decompositions(beta, omega, cone: EffectiveCone) -> list[tuple]:
    """Unordered ``beta = b1 + b2`` into nonzero, non-proportional effective classes."""
    beta = tuple(int(x) for x in beta)
    out = []
    for b1 in _effective_pairs(beta, omega, cone):
        b2 = tuple(x - y for x, y in zip(beta, b1))
        if not any(b1) or not any(b2) or b1 > b2:
            continue
        if GammaClass(b1, 0).proportional(GammaClass(b2, 0)):
            continue
        out.append((b1, b2))
    return out


def generic_delta(beta, H, omega, cone: EffectiveCone):
    """Largest ``delta_0`` from the discreteness of ``m2/(w.b2) - m1/(w.b1)``.

    For ``0 < |delta| < delta_0`` no decomposition ``beta = b1 + b2`` has
    ``(m1 + delta H.b1)/(w.b1) == (m2 + delta H.b2)/(w.b2)``.  Returns
    ``INF`` if every decomposition is proportional.
    """
    H = tuple(as_fraction(x) for x in H)
    omega = tuple(as_fraction(x) for x in omega)
    best = INF
    for b1, b2 in effective_decompositions(beta, omega, cone):
        w1, w2 = _dot(omega, b1), _dot(omega, b2)
        alpha = _dot(H, b1) / w1 - _dot(H, b2) / w2
        if alpha == 0:
            raise NonGenericError(f"non-generic (H, omega): alpha = 0 for {b1} + {b2}")
        d = rational_gcd(1 / w1, 1 / w2) / abs(alpha)
        if d < best:
            best = d
    return best


def delta_condition_holds(b1, b2, H, omega, m1: int, m2: int, delta) -> bool:
    lhs = (m1 + delta * _dot(H, b1)) / _dot(omega, b1)
    rhs = (m2 + delta * _dot(H, b2)) / _dot(omega, b2)
    return lhs != rhs


def _det(M: list[list[Fraction]]) -> Fraction:
    A = [list(map(as_fraction, r)) for r in M]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return det


def _rank(M: list[list]) -> int:
    A = [list(map(as_fraction, r)) for r in M]
    rank, rows = 0, len(A)
    cols = len(A[0]) if A else 0
    for c in range(cols):
        p = next((r for r in range(rank, rows) if A[r][c] != 0), None)
        if p is None:
            continue
        A[rank], A[p] = A[p], A[rank]
        for r in range(rows):
            if r != rank and A[r][c] != 0:
                f = A[r][c] / A[rank][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[rank])]
        rank += 1
    return rank


def _matvec(M, x) -> tuple:
    return tuple(sum(int(a) * int(b) for a, b in zip(row, x)) for row in M)


def flop_transform(M: Sequence[Sequence[int]], v: GammaClass) -> GammaClass:
    """``(beta, m) -> (M beta, m)`` for the push-forward matrix ``M`` of the flop."""
    M = [[int(x) for x in row] for row in M]
    if any(len(r) != len(M) for r in M) or len(M) != v.rank:
        raise GammaError("flop matrix must be square of the lattice rank")
    if _det(M) == 0:
        raise GammaError("flop matrix is singular")
    return GammaClass(_matvec(M, v.beta), v.m)


def pairing_compatible(M: Sequence[Sequence[int]], Dinv: Sequence[Sequence]) -> bool:
    """Check ``(M beta) . D == beta . (Dinv D)`` on basis vectors.

    ``Dinv`` is the matrix of the inverse push-forward on divisors.
    """
    n = len(M)
    for i in range(n):
        for j in range(n):
            lhs = as_fraction(M[j][i])  # e_j . (M e_i)
            rhs = as_fraction(Dinv[i][j])  # e_i . (Dinv e_j)
            if lhs != rhs:
                return False
    return True


def blowup_pullback(P: Sequence[Sequence[int]], gamma: CycleData) -> CycleData:
    """Map each component class through ``P`` (rows = target rank), keeping multiplicities."""
    P = [[int(x) for x in row] for row in P]
    if not P or _rank(P) < len(P[0]):
        raise GammaError("pullback matrix must have full column rank")
    return CycleData(tuple((a, _matvec(P, c)) for a, c in gamma.components))


def is_primitive(gamma: CycleData) -> bool:
    if not gamma.components:
        raise GammaError("empty cycle")
    return reduce(math.gcd, (a for a, _ in gamma.components)) == 1


def gv_basis(g: int, var: str = "y") -> LaurentPoly:
    """``(y^(1/2) + y^(-1/2))^(2g) = (y^-1 + 2 + y)^g``."""
    return LaurentPoly({-1: 1, 0: 2, 1: 1}, var) ** g


def gv_extract(phi: LaurentPoly) -> list[int]:
    """Integers ``n_g`` with ``phi = sum_g n_g (y^(1/2) + y^(-1/2))^(2g)``."""
    for e, a in phi.items():
        if phi[-e] != a:
            raise AsymmetricPhiError(e, a, phi[-e])
    if not phi.is_integral():
        raise GammaError("Phi must have integer coefficients")
    if phi.is_zero():
        return [0]
    gmax = phi.max_exp()
    rest = phi
    ns = [0] * (gmax + 1)
    for g in range(gmax, -1, -1):
        c = rest[g]
        ns[g] = int(c)
        if c:
            rest = rest - gv_basis(g, phi.var) * c
    if not rest.is_zero():
        raise GammaError("GV reconstruction failed")  # unreachable for symmetric input
    return ns


def gv_expand(ns: Sequence[int], var: str = "y") -> LaurentPoly:
    out = LaurentPoly({}, var)
    for g, n in enumerate(ns):
        out = out + gv_basis(g, var) * n
    return out


def elliptic_phi(e: int) -> LaurentPoly:
    """``y^-1 + (2 - e) + y`` for a fiber of Euler characteristic ``e``."""
    if e not in (0, 1, 2):
        raise GammaError("fiber Euler characteristic must be 0, 1 or 2")
    return LaurentPoly({-1: 1, 0: 2 - e, 1: 1}, "y")


def zero_cycle_phi(multiplicities: Sequence[int]) -> LaurentPoly:
    """-1 if the zero-cycle is supported at one point, 0 otherwise."""
    mult = [int(a) for a in multiplicities]
    if not mult or any(a < 1 for a in mult) or sum(mult) < 1:
        raise GammaError("zero-cycle must have positive multiplicities")
    return LaurentPoly({0: -1} if len(mult) == 1 else {}, "y")
