"""BPS invariants of symmetric quivers by plethystic inversion.

The generating series of normalized stack counts factors as
``A = Exp(P_vir * Omega)`` with ``P_vir = -v^-1 / (1 - v^-2)``, the
point-count shadow of ``H*(P^infty)_vir``.  Normalization: the coefficient at
``m`` is ``(-v)^<m,m> * stack_count(m)`` at ``q = v^2``; for symmetric quivers
this turns the HN twists into ordinary products, so each slope slice can be
inverted on its own.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .arith import LaurentPoly, RationalFunction, TruncatedSeries, plethystic_exp, plethystic_log
from .quiver import Quiver, euler_form, is_symmetric, stack_count
from .stability import StabilityXi, semistable_count, slope_xi

__all__ = [
    "NotSymmetricError",
    "ConventionViolation",
    "P_VIR",
    "BpsTable",
    "InvarianceReport",
    "normalized_coefficient",
    "normalized_stack_series",
    "bps_trivial",
    "bps_xi",
    "invariance_check",
    "euler_specialize",
    "reconstruct_series",
]

_V = LaurentPoly.monomial(1)
P_VIR = RationalFunction(-LaurentPoly.monomial(-1)) / (1 - LaurentPoly.monomial(-2))


class NotSymmetricError(ValueError):
    def __init__(self):
        super().__init__("quiver is not symmetric")


class ConventionViolation(ArithmeticError):
    """A BPS coefficient came out non-polynomial."""


def _keys(rank: int, N: int) -> list[tuple]:
    ks = [k for k in product(range(N + 1), repeat=rank) if 0 < sum(k) <= N]
    ks.sort(key=lambda k: (sum(k), k))
    return ks


def normalized_coefficient(Q: Quiver, m, count: RationalFunction) -> RationalFunction:
    """``(-v)^<m,m> * count(q = v^2)``."""
    e = euler_form(Q, m, m)
    sign = -1 if e % 2 else 1
    return count.subs_power(2, "v") * RationalFunction(LaurentPoly.monomial(e, sign))


def normalized_stack_series(Q: Quiver, N: int) -> TruncatedSeries:
    if not is_symmetric(Q):
        raise NotSymmetricError()
    c = {(0,) * Q.n: 1}
    for m in _keys(Q.n, N):
        c[m] = normalized_coefficient(Q, m, stack_count(Q, m))
    return TruncatedSeries(Q.n, N, c)


@dataclass(frozen=True)
class BpsTable:
    trunc: int
    entries: dict = field(default_factory=dict)
    stability: StabilityXi | None = None

    def __getitem__(self, m) -> LaurentPoly:
        return self.entries.get(tuple(m), LaurentPoly({}))

    def keys(self):
        return self.entries.keys()

    def nonzero(self) -> dict:
        return {k: p for k, p in self.entries.items() if not p.is_zero()}

    def to_json(self) -> dict:
        return {
            "trunc": self.trunc,
            "entries": [{"dim": list(k), "omega": p.to_string()} for k, p in sorted(self.entries.items(), key=lambda t: (sum(t[0]), t[0]))],
            "stability": "trivial" if self.stability is None else self.stability.to_json(),
        }


def _omega_from_log(log_series: TruncatedSeries, keys) -> dict:
    out = {}
    for m in keys:
        om = log_series[m] / P_VIR
        if not om.is_laurent():
            raise ConventionViolation(f"BPS coefficient at {m} is not a Laurent polynomial: {om}")
        out[m] = om.as_laurent()
    return out


def bps_trivial(Q: Quiver, N: int) -> BpsTable:
    A = normalized_stack_series(Q, N)
    return BpsTable(N, _omega_from_log(plethystic_log(A), _keys(Q.n, N)))


def bps_xi(Q: Quiver, xi: StabilityXi, N: int) -> BpsTable:
    """Invert the per-slope series of semistable counts separately."""
    if not is_symmetric(Q):
        raise NotSymmetricError()
    slices: dict[Fraction, list] = {}
    for m in _keys(Q.n, N):
        slices.setdefault(slope_xi(xi, m), []).append(m)
    entries: dict = {}
    zero = (0,) * Q.n
    for mu, ms in sorted(slices.items()):
        c = {zero: 1}
        for m in ms:
            c[m] = normalized_coefficient(Q, m, semistable_count(Q, xi, m))
        entries.update(_omega_from_log(plethystic_log(TruncatedSeries(Q.n, N, c)), ms))
    return BpsTable(N, dict(sorted(entries.items(), key=lambda t: (sum(t[0]), t[0]))), xi)


def reconstruct_series(Q: Quiver, table: BpsTable) -> TruncatedSeries:
    """``Exp(P_vir * Omega)``; equals ``normalized_stack_series`` for a correct table."""
    s = TruncatedSeries(Q.n, table.trunc, {m: RationalFunction(p) * P_VIR for m, p in table.entries.items()})
    return plethystic_exp(s)


@dataclass
class InvarianceReport:
    quiver: Quiver
    trunc: int
    checked: list = field(default_factory=list)
    discrepancies: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.discrepancies


def invariance_check(Q: Quiver, xis, N: int) -> InvarianceReport:
    ref = bps_trivial(Q, N)
    rep = InvarianceReport(Q, N)
    for xi in xis:
        t = bps_xi(Q, xi, N)
        rep.checked.append(xi)
        for m in ref.keys():
            if t[m] != ref[m]:
                rep.discrepancies.append((xi, m, ref[m], t[m]))
    return rep


def euler_specialize(table: BpsTable) -> dict:
    out = {}
    for m, p in table.entries.items():
        x = p.evaluate(1)
        x = Fraction(x)
        if x.denominator != 1:
            raise ConventionViolation(f"non-integral Euler characteristic at {m}")
        out[m] = int(x)
    return out
