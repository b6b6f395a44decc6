"""Slope stability for quiver representations and HN recursion for stack counts.

A stability ``xi`` assigns to every vertex a point of the upper half plane;
the slope of a dimension vector is ``-Re Z / Im Z`` with ``Z(m) = sum m_i xi_i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

from .arith import LaurentPoly, RationalFunction, as_fraction
from .quiver import Quiver, dim_vector, euler_form, stack_count

__all__ = [
    "ExactComplex",
    "StabilityXi",
    "central_charge_xi",
    "slope_xi",
    "is_generic",
    "hn_strata",
    "hn_twist",
    "stratum_contribution",
    "semistable_count",
    "sub_vectors",
]


@dataclass(frozen=True)
class ExactComplex:
    re: Fraction
    im: Fraction

    def __add__(self, other: "ExactComplex") -> "ExactComplex":
        return ExactComplex(self.re + other.re, self.im + other.im)

    def scale(self, c) -> "ExactComplex":
        return ExactComplex(self.re * c, self.im * c)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        im = "" if abs(self.im) == 1 else str(abs(self.im))
        if self.re == 0:
            return f"{'-' if self.im < 0 else ''}{im}i"
        return f"{self.re}{'-' if self.im < 0 else '+'}{im}i"


ZERO_C = ExactComplex(Fraction(0), Fraction(0))


@dataclass(frozen=True)
class StabilityXi:
    """Per-vertex central charges ``xi_i`` with ``Im xi_i > 0``."""

    xi: tuple

    def __post_init__(self):
        vals = []
        for z in self.xi:
            if isinstance(z, ExactComplex):
                re, im = z.re, z.im
            else:
                re, im = z
            z = ExactComplex(as_fraction(re), as_fraction(im))
            if z.im <= 0:
                raise ValueError(f"stability parameter {z} is not in the upper half plane")
            vals.append(z)
        object.__setattr__(self, "xi", tuple(vals))

    @classmethod
    def of(cls, *pairs) -> "StabilityXi":
        return cls(tuple(pairs))

    def __len__(self):
        return len(self.xi)

    def scaled(self, c) -> "StabilityXi":
        c = as_fraction(c)
        if c <= 0:
            raise ValueError("scaling factor must be positive")
        return StabilityXi(tuple(z.scale(c) for z in self.xi))

    def to_json(self) -> dict:
        return {"xi": [{"re": str(z.re), "im": str(z.im)} for z in self.xi]}


def central_charge_xi(xi: StabilityXi, m) -> ExactComplex:
    if len(m) != len(xi):
        raise ValueError("dimension vector and stability have different lengths")
    z = ZERO_C
    for mi, x in zip(m, xi.xi):
        z = z + x.scale(mi)
    return z


def slope_xi(xi: StabilityXi, m) -> Fraction:
    if not any(m):
        raise ValueError("slope of the zero dimension vector is undefined")
    z = central_charge_xi(xi, m)
    return -z.re / z.im


def sub_vectors(m: Sequence[int], proper: bool = False) -> Iterator[tuple]:
    """Nonzero vectors dominated by ``m`` componentwise."""
    m = tuple(m)
    for a in product(*(range(x + 1) for x in m)):
        if any(a) and not (proper and a == m):
            yield a


def _proportional(a, b) -> bool:
    n = len(a)
    return all(a[i] * b[j] == a[j] * b[i] for i in range(n) for j in range(i + 1, n))


def is_generic(xi: StabilityXi, m) -> bool:
    by_slope: dict[Fraction, tuple] = {}
    for a in sub_vectors(m):
        mu = slope_xi(xi, a)
        ref = by_slope.setdefault(mu, a)
        if ref is not a and not _proportional(ref, a):
            return False
    return True


def hn_strata(xi: StabilityXi, m) -> list[tuple]:
    """All ordered decompositions of ``m`` with strictly decreasing slopes.

    The trivial stratum ``(m,)`` comes first; the rest are sorted by length,
    then lexicographically.
    """
    m = tuple(m)
    if not any(m):
        raise ValueError("hn_strata of the zero vector")
    out: list[tuple] = []

    def rec(rest: tuple, bound, acc: list):
        if not any(rest):
            out.append(tuple(acc))
            return
        for a in sub_vectors(rest):
            mu = slope_xi(xi, a)
            if bound is None or mu < bound:
                acc.append(a)
                rec(tuple(x - y for x, y in zip(rest, a)), mu, acc)
                acc.pop()

    rec(m, None, [])
    out.sort(key=lambda s: (len(s), s))
    return out


def hn_twist(Q: Quiver, stratum: Sequence[tuple]) -> int:
    """Exponent ``-sum_{i<j} <m_j, m_i>`` of ``q`` attached to an HN type."""
    k = len(stratum)
    return -sum(euler_form(Q, stratum[j], stratum[i]) for i in range(k) for j in range(i + 1, k))


def stratum_contribution(Q: Quiver, xi: StabilityXi, stratum: Sequence[tuple]) -> RationalFunction:
    out = RationalFunction(LaurentPoly.monomial(hn_twist(Q, stratum), var="q"))
    for part in stratum:
        out = out * semistable_count(Q, xi, part)
    return out


def semistable_count(Q: Quiver, xi: StabilityXi, m) -> RationalFunction:
    """Stack count of ``xi``-semistable representations, as a function of ``q``.

    Solves ``stack_count(m) = sum over HN types`` of twisted products by
    induction on ``|m|``.
    """
    m = dim_vector(Q, m)
    if len(xi) != Q.n:
        raise ValueError("stability has the wrong number of vertices")
    if not any(m):
        raise ValueError("semistable_count of the zero vector")
    return _HNSolver.get(Q, xi).ss(m)


class _HNSolver:
    """Memoized first-stratum recursion, shared across calls for one ``(Q, xi)``."""

    _cache: dict = {}

    @classmethod
    def get(cls, Q: Quiver, xi: StabilityXi) -> "_HNSolver":
        key = (Q, xi)
        s = cls._cache.get(key)
        if s is None:
            if len(cls._cache) > 256:
                cls._cache.clear()
            s = cls._cache[key] = cls(Q, xi)
        return s

    def __init__(self, Q: Quiver, xi: StabilityXi):
        self.Q, self.xi = Q, xi
        self._ss: dict[tuple, RationalFunction] = {}
        self._below: dict[tuple, RationalFunction] = {}
        self._slope: dict[tuple, Fraction] = {}

    def slope(self, a: tuple) -> Fraction:
        s = self._slope.get(a)
        if s is None:
            s = self._slope[a] = slope_xi(self.xi, a)
        return s

    def _q(self, e: int) -> RationalFunction:
        return RationalFunction(LaurentPoly.monomial(e, var="q"), _canonical=True)

    def below(self, n: tuple, mu) -> RationalFunction:
        """Sum over HN types of ``n`` whose slopes are all ``< mu``."""
        if not any(n):
            return self._q(0)
        key = (n, mu)
        r = self._below.get(key)
        if r is not None:
            return r
        acc = RationalFunction(LaurentPoly({}, "q"), _canonical=True)
        for a in sub_vectors(n):
            mu_a = self.slope(a)
            if mu_a >= mu:
                continue
            rest = tuple(x - y for x, y in zip(n, a))
            tail = self.below(rest, mu_a)
            if tail.is_zero():
                continue
            tw = -euler_form(self.Q, rest, a)
            acc = acc + self.ss(a) * self._q(tw) * tail
        self._below[key] = acc
        return acc

    def ss(self, m: tuple) -> RationalFunction:
        r = self._ss.get(m)
        if r is not None:
            return r
        acc = stack_count(self.Q, m)
        for a in sub_vectors(m, proper=True):
            rest = tuple(x - y for x, y in zip(m, a))
            tail = self.below(rest, self.slope(a))
            if tail.is_zero():
                continue
            tw = -euler_form(self.Q, rest, a)
            acc = acc - self.ss(a) * self._q(tw) * tail
        self._ss[m] = acc
        return acc
