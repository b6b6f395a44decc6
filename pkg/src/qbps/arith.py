"""Exact univariate and multi-graded arithmetic.

Everything here is built on :class:`fractions.Fraction`.  Three value types
are provided:

* :class:`LaurentPoly` -- sparse Laurent polynomial in one named variable.
* :class:`RationalFunction` -- quotient of Laurent polynomials kept in a
  canonical form, so that ``==`` is a structural comparison.
* :class:`TruncatedSeries` -- power series in ``x_1..x_r`` truncated by total
  degree, with rational-function coefficients.  Adams operations and the
  plethystic ``Exp``/``Log`` live here.
"""
from __future__ import annotations

import re
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Mapping

__all__ = [
    "ArithmeticError_",
    "LaurentPoly",
    "RationalFunction",
    "TruncatedSeries",
    "as_fraction",
    "rational_gcd",
    "mobius",
    "adams",
    "plethystic_exp",
    "plethystic_log",
]


class ArithmeticError_(ArithmeticError):
    """Raised for exact-arithmetic domain errors (e.g. division by zero)."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact scalars")
    return Fraction(x)


# ---------------------------------------------------------------------------
# dense polynomial helpers (coefficient lists, lowest degree first)


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _pdivmod(a: list, b: list) -> tuple[list, list]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(a) - 1 < db:
        return [], _trim(a)
    q = [Fraction(0)] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c == 0:
            continue
        c = c / lead
        q[i - db] = c
        for j in range(db + 1):
            a[i - db + j] -= c * b[j]
    return _trim(q), _trim(a[:db])


def _pgcd(a: list, b: list) -> list:
    """Monic gcd of two dense polynomials."""
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
        if b:
            lead = b[-1]
            b = [c / lead for c in b]
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


# ---------------------------------------------------------------------------


class LaurentPoly:
    """Sparse Laurent polynomial ``sum c_e * var**e`` with rational ``c_e``."""

    __slots__ = ("_c", "var", "_hash")

    def __init__(self, coeffs: Mapping[int, object] | None = None, var: str = "v"):
        c = {}
        if coeffs:
            for e, a in coeffs.items():
                a = as_fraction(a)
                if a:
                    c[int(e)] = a
        self._c = dict(sorted(c.items()))
        self.var = var
        self._hash = None

    # construction helpers
    @classmethod
    def monomial(cls, exp: int, coeff=1, var: str = "v") -> "LaurentPoly":
        return cls({exp: coeff}, var)

    @classmethod
    def const(cls, c, var: str = "v") -> "LaurentPoly":
        return cls({0: c}, var)

    @classmethod
    def _from_dense(cls, dense: list, shift: int, var: str) -> "LaurentPoly":
        return cls({i + shift: a for i, a in enumerate(dense) if a}, var)

    @classmethod
    def parse(cls, text: str, var: str | None = None) -> "LaurentPoly":
        return parse_laurent(text, var)

    # accessors
    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._c)

    def items(self):
        return self._c.items()

    def __getitem__(self, e: int) -> Fraction:
        return self._c.get(e, Fraction(0))

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def min_exp(self) -> int:
        return next(iter(self._c)) if self._c else 0

    def max_exp(self) -> int:
        return next(reversed(self._c)) if self._c else 0

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self._c.values())

    def _dense(self) -> tuple[list, int]:
        if not self._c:
            return [], 0
        lo, hi = self.min_exp(), self.max_exp()
        d = [Fraction(0)] * (hi - lo + 1)
        for e, a in self._c.items():
            d[e - lo] = a
        return d, lo

    # arithmetic
    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.var != self.var and other._c and self._c:
                if not (other.is_constant() or self.is_constant()):
                    raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        return LaurentPoly.const(other, self.var)

    def _var_with(self, other: "LaurentPoly") -> str:
        return self.var if not self.is_constant() or other.is_constant() else other.var

    def is_constant(self) -> bool:
        return not self._c or (len(self._c) == 1 and 0 in self._c)

    def __add__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        o = self._coerce(other)
        c = dict(self._c)
        for e, a in o._c.items():
            c[e] = c.get(e, 0) + a
        return LaurentPoly(c, self._var_with(o))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -a for e, a in self._c.items()}, self.var)

    def __sub__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        o = self._coerce(other)
        c: dict[int, Fraction] = {}
        for e1, a1 in self._c.items():
            for e2, a2 in o._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + a1 * a2
        return LaurentPoly(c, self._var_with(o))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial():
                raise ArithmeticError_("negative power of a non-monomial Laurent polynomial")
            (e, a), = self._c.items()
            return LaurentPoly({e * n: a ** n}, self.var)
        out = LaurentPoly.const(1, self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __truediv__(self, other):
        return RationalFunction(self) / other

    def __rtruediv__(self, other):
        return RationalFunction(other if isinstance(other, LaurentPoly) else LaurentPoly.const(other, self.var)) / self

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return other == self
        if isinstance(other, LaurentPoly):
            return self._c == other._c and (self.var == other.var or self.is_constant())
        try:
            return self._c == LaurentPoly.const(other)._c
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(self._c.items()), self.var if not self.is_constant() else ""))
        return self._hash

    # substitutions
    def subs_power(self, k: int, var: str | None = None) -> "LaurentPoly":
        """Return ``p(x**k)``, optionally renaming the variable."""
        return LaurentPoly({e * k: a for e, a in self._c.items()}, var or self.var)

    def rename(self, var: str) -> "LaurentPoly":
        return LaurentPoly(self._c, var)

    def evaluate(self, x):
        total = 0
        for e, a in self._c.items():
            total += a * (x ** e)
        return total

    def bar(self) -> "LaurentPoly":
        """``var -> 1/var``."""
        return LaurentPoly({-e: a for e, a in self._c.items()}, self.var)

    def to_string(self) -> str:
        if not self._c:
            return "0"
        out = []
        for i, (e, a) in enumerate(self._c.items()):
            neg = a < 0
            mag = -a if neg else a
            if e == 0:
                body = str(mag)
            else:
                mono = self.var if e == 1 else f"{self.var}^{e}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if i == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    __str__ = to_string

    def __repr__(self):
        return f"LaurentPoly({self.to_string()!r})"


_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\d+(?:/\d+)?)\s*\*?\s*)?
        (?:(?P<var>[A-Za-z])\s*(?:\^\s*(?P<exp>[+-]?\s*\d+|\(\s*[+-]?\d+\s*\)))?)?
        \s*""",
    re.VERBOSE,
)


class LaurentParseError(ValueError):
    def __init__(self, text: str, pos: int, msg: str = "cannot parse Laurent polynomial"):
        super().__init__(f"{msg} at column {pos + 1}: {text!r}")
        self.text = text
        self.column = pos + 1


def parse_laurent(text: str, var: str | None = None) -> LaurentPoly:
    """Parse the canonical text form (also accepts compact forms like ``y^-1+1+y``)."""
    pos = 0
    n = len(text)
    coeffs: dict[int, Fraction] = {}
    seen_var = var
    first = True
    if not text.strip():
        raise LaurentParseError(text, 0, "empty Laurent polynomial")
    while pos < n:
        m = _TERM_RE.match(text, pos)
        if m is None or m.end() == pos or (m.group("coef") is None and m.group("var") is None):
            raise LaurentParseError(text, pos)
        if m.group("sign") is None and not first:
            raise LaurentParseError(text, pos, "missing '+' or '-' between terms")
        first = False
        sign = -1 if m.group("sign") == "-" else 1
        c = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        e = 0
        if m.group("var"):
            v = m.group("var")
            if seen_var is None:
                seen_var = v
            elif v != seen_var:
                raise LaurentParseError(text, m.start("var"), f"unexpected variable {v!r}")
            raw = m.group("exp")
            e = int(raw.strip("() ").replace(" ", "")) if raw else 1
        coeffs[e] = coeffs.get(e, 0) + sign * c
        pos = m.end()
    return LaurentPoly(coeffs, seen_var or "v")


# ---------------------------------------------------------------------------


class RationalFunction:
    """Quotient ``num/den`` of Laurent polynomials in canonical form.

    Canonical form: ``den`` is an ordinary polynomial whose constant term is 1
    and ``gcd(num, den) = 1``.  Two equal rational functions therefore have
    identical ``(num, den)``.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=None, *, _canonical: bool = False):
        if not isinstance(num, LaurentPoly):
            if isinstance(num, RationalFunction):
                num, den0 = num.num, num.den
                den = den0 if den is None else den0 * _as_lp(den, num.var)
            else:
                num = LaurentPoly.const(num)
        if den is None:
            den = LaurentPoly.const(1, num.var)
        elif not isinstance(den, LaurentPoly):
            den = LaurentPoly.const(den, num.var)
        self._hash = None
        if _canonical:
            self.num, self.den = num, den
            return
        if den.is_zero():
            raise ArithmeticError_("rational function with zero denominator")
        self.num, self.den = _canonicalize(num, den)

    @property
    def var(self) -> str:
        if not self.num.is_constant():
            return self.num.var
        return self.den.var

    @classmethod
    def parse(cls, text: str, var: str | None = None) -> "RationalFunction":
        text = text.strip()
        if "/(" in text:
            i = text.index("/(")
            num_s = text[:i].strip()
            if num_s.startswith("(") and num_s.endswith(")"):
                num_s = num_s[1:-1]
            den_s = text[i + 2:].rstrip()
            if not den_s.endswith(")"):
                raise LaurentParseError(text, len(text) - 1, "unbalanced parenthesis")
            num = parse_laurent(num_s, var)
            den = parse_laurent(den_s[:-1], var or (num.var if not num.is_constant() else None))
            return cls(num, den)
        return cls(parse_laurent(text, var))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den.is_constant()

    def as_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise ArithmeticError_(f"{self} is not a Laurent polynomial")
        return self.num.rename(self.var)

    def _co(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, LaurentPoly):
            return RationalFunction(other)
        return RationalFunction(LaurentPoly.const(other, self.var), _canonical=True)

    def __add__(self, other):
        o = self._co(other)
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        # canonical denominators have constant term 1, so den == 1 here
        if self.den.is_constant():
            return RationalFunction(self.num * o.den + o.num, o.den, _canonical=True)
        if o.den.is_constant():
            return RationalFunction(self.num + o.num * self.den, self.den, _canonical=True)
        g = _lp_gcd(self.den, o.den)
        d1 = _lp_exact_div(self.den, g)
        d2 = _lp_exact_div(o.den, g)
        num = self.num * d2 + o.num * d1
        if num.is_zero():
            return RationalFunction(LaurentPoly({}, self.var), _canonical=True)
        # only factors of g can cancel against num
        if not g.is_constant():
            h = _lp_gcd(num, g)
            if not h.is_constant():
                num = _lp_exact_div(num, h)
                g = _lp_exact_div(g, h)
        return RationalFunction(num, d1 * d2 * g, _canonical=True)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        return self + (-self._co(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._co(other)
        if self.is_zero() or o.is_zero():
            return RationalFunction(LaurentPoly({}, self.var), _canonical=True)
        if self.den.is_constant() and o.den.is_constant():
            return RationalFunction(self.num * o.num, _canonical=True)
        # cross-cancel before multiplying
        n1, d2 = _cancel(self.num, o.den)
        n2, d1 = _cancel(o.num, self.den)
        return RationalFunction(n1 * n2, d1 * d2, _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ArithmeticError_("division by zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        o = self._co(other)
        if o.is_zero():
            raise ArithmeticError_("division by zero rational function")
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._co(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction(self.num ** n, self.den ** n, _canonical=True)

    def __eq__(self, other):
        if isinstance(other, (RationalFunction, LaurentPoly, int, Fraction)):
            o = self._co(other)
            return self.num == o.num and self.den == o.den
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def subs_power(self, k: int, var: str | None = None) -> "RationalFunction":
        """Substitute ``x -> x**k`` (and rename to ``var``)."""
        if k == 1 and var is None:
            return self
        if k < 0:
            return RationalFunction(self.num.subs_power(k, var), self.den.subs_power(k, var))
        return RationalFunction(self.num.subs_power(k, var), self.den.subs_power(k, var), _canonical=True)

    def halve_exponents(self, var: str) -> "RationalFunction":
        """Inverse of ``subs_power(2)``; requires all exponents even."""
        for p in (self.num, self.den):
            if any(e % 2 for e, _ in p.items()):
                raise ArithmeticError_(f"{self} is not a function of {self.var}^2")
        num = LaurentPoly({e // 2: a for e, a in self.num.items()}, var)
        den = LaurentPoly({e // 2: a for e, a in self.den.items()}, var)
        return RationalFunction(num, den, _canonical=True)

    def evaluate(self, x):
        d = self.den.evaluate(x)
        if d == 0:
            raise ArithmeticError_("pole at evaluation point")
        return self.num.evaluate(x) / d

    def to_string(self) -> str:
        if self.den.is_constant():
            return self.num.to_string()
        n = self.num.to_string()
        d = self.den.to_string()
        if not (self.num.is_monomial() or self.num.is_constant()):
            n = f"({n})"
        return f"{n}/({d})"

    __str__ = to_string

    def __repr__(self):
        return f"RationalFunction({self.to_string()!r})"


def _as_lp(x, var) -> LaurentPoly:
    return x if isinstance(x, LaurentPoly) else LaurentPoly.const(x, var)


def _lp_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """gcd of the polynomial parts, normalized to constant term 1 (v-free)."""
    da, _ = a._dense()
    db, _ = b._dense()
    g = _pgcd(da, db)
    if len(g) <= 1:
        return LaurentPoly.const(1, a.var)
    c0 = g[0]
    return LaurentPoly._from_dense([c / c0 for c in g], 0, a.var)


def _lp_exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    if b.is_constant():
        c = b[0]
        return LaurentPoly({e: x / c for e, x in a.items()}, a.var)
    da, sa = a._dense()
    db, sb = b._dense()
    q, r = _pdivmod(da, db)
    if r:
        raise ArithmeticError_("inexact polynomial division")
    return LaurentPoly._from_dense(q, sa - sb, a.var)


def _cancel(n: LaurentPoly, d: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if d.is_constant() or n.is_constant():
        return n, d
    g = _lp_gcd(n, d)
    if g.is_constant():
        return n, d
    return _lp_exact_div(n, g), _lp_exact_div(d, g)


def _canonicalize(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    var = num.var if not num.is_constant() else den.var
    num, den = num.rename(var), den.rename(var)
    if num.is_zero():
        return LaurentPoly({}, var), LaurentPoly.const(1, var)
    # move the monomial part of den into num
    k = den.min_exp()
    c0 = den[k]
    den = LaurentPoly({e - k: a / c0 for e, a in den.items()}, var)
    num = LaurentPoly({e - k: a / c0 for e, a in num.items()}, var)
    if den.is_constant():
        return num, den
    g = _lp_gcd(num, den)
    if not g.is_constant():
        num = _lp_exact_div(num, g)
        den = _lp_exact_div(den, g)
    return num, den


# ---------------------------------------------------------------------------


def rational_gcd(a, b) -> Fraction:
    """Positive generator of the subgroup ``aZ + bZ`` of ``Q``."""
    a, b = as_fraction(a), as_fraction(b)
    if a == 0 and b == 0:
        raise ArithmeticError_("rational_gcd(0, 0) is undefined")
    from math import gcd
    num = gcd(a.numerator * b.denominator, b.numerator * a.denominator)
    return Fraction(num, a.denominator * b.denominator)


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius requires n >= 1")
    res, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            res = -res
        p += 1
    return -res if n > 1 else res


# ---------------------------------------------------------------------------


def _coerce_rf(x, var: str) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, LaurentPoly):
        return RationalFunction(x)
    return RationalFunction(LaurentPoly.const(x, var), _canonical=True)


class TruncatedSeries:
    """Power series in ``x_1..x_rank`` modulo total degree ``> trunc``.

    Keys are tuples of nonnegative integers; coefficients are
    :class:`RationalFunction` values in ``var``.
    """

    __slots__ = ("rank", "trunc", "var", "_c")

    def __init__(self, rank: int, trunc: int, coeffs: Mapping | None = None, var: str = "v"):
        if rank < 1:
            raise ValueError("rank must be >= 1")
        if trunc < 0:
            raise ValueError("truncation bound must be >= 0")
        self.rank, self.trunc, self.var = rank, trunc, var
        c: dict[tuple, RationalFunction] = {}
        for k, a in (coeffs or {}).items():
            k = tuple(int(x) for x in k)
            if len(k) != rank or any(x < 0 for x in k):
                raise ValueError(f"bad grading key {k} for rank {rank}")
            if sum(k) > trunc:
                continue
            a = _coerce_rf(a, var)
            if a:
                c[k] = a
        self._c = c

    @classmethod
    def one(cls, rank: int, trunc: int, var: str = "v") -> "TruncatedSeries":
        return cls(rank, trunc, {(0,) * rank: 1}, var)

    def _new(self, c: dict) -> "TruncatedSeries":
        s = TruncatedSeries.__new__(TruncatedSeries)
        s.rank, s.trunc, s.var = self.rank, self.trunc, self.var
        s._c = {k: a for k, a in c.items() if a}
        return s

    def __getitem__(self, key) -> RationalFunction:
        key = tuple(key)
        return self._c.get(key, RationalFunction(LaurentPoly({}, self.var), _canonical=True))

    def keys(self):
        return self._c.keys()

    def items(self):
        return self._c.items()

    def __len__(self):
        return len(self._c)

    def __iter__(self) -> Iterator[tuple]:
        return iter(self._c)

    def constant_term(self) -> RationalFunction:
        return self[(0,) * self.rank]

    def _check(self, other: "TruncatedSeries"):
        if not isinstance(other, TruncatedSeries):
            raise TypeError("expected TruncatedSeries")
        if other.rank != self.rank:
            raise ValueError("rank mismatch")

    def __add__(self, other):
        self._check(other)
        n = min(self.trunc, other.trunc)
        c = {k: a for k, a in self._c.items() if sum(k) <= n}
        for k, a in other._c.items():
            if sum(k) <= n:
                c[k] = c[k] + a if k in c else a
        out = self._new(c)
        out.trunc = n
        return out

    def __neg__(self):
        return self._new({k: -a for k, a in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, r) -> "TruncatedSeries":
        r = _coerce_rf(r, self.var)
        return self._new({k: a * r for k, a in self._c.items()})

    def map_coeffs(self, fn) -> "TruncatedSeries":
        return self._new({k: fn(a) for k, a in self._c.items()})

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        self._check(other)
        n = min(self.trunc, other.trunc)
        c: dict[tuple, RationalFunction] = {}
        for k1, a1 in self._c.items():
            d1 = sum(k1)
            if d1 > n:
                continue
            for k2, a2 in other._c.items():
                if d1 + sum(k2) > n:
                    continue
                k = tuple(x + y for x, y in zip(k1, k2))
                p = a1 * a2
                c[k] = c[k] + p if k in c else p
        out = self._new(c)
        out.trunc = n
        return out

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(self.trunc, other.trunc)
        a = {k: x for k, x in self._c.items() if sum(k) <= n}
        b = {k: x for k, x in other._c.items() if sum(k) <= n}
        return self.rank == other.rank and a == b

    def __hash__(self):
        return hash((self.rank, self.trunc, frozenset(self._c.items())))

    def truncate(self, n: int) -> "TruncatedSeries":
        out = self._new({k: a for k, a in self._c.items() if sum(k) <= n})
        out.trunc = min(n, self.trunc)
        return out

    def __repr__(self):
        body = ", ".join(f"{k}: {a}" for k, a in sorted(self._c.items()))
        return f"TruncatedSeries(rank={self.rank}, trunc={self.trunc}, {{{body}}})"


def _keys_upto(rank: int, n: int) -> list[tuple]:
    """All nonnegative rank-tuples with total degree <= n, by degree."""
    out = [k for k in product(range(n + 1), repeat=rank) if sum(k) <= n]
    out.sort(key=lambda k: (sum(k), k))
    return out


def adams(f: TruncatedSeries, k: int) -> TruncatedSeries:
    """Adams operation: ``v -> v**k`` in coefficients and ``x^m -> x^(k m)``."""
    if k < 1:
        raise ValueError("Adams operation index must be >= 1")
    if k == 1:
        return f
    c = {}
    for key, a in f.items():
        nk = tuple(k * x for x in key)
        if sum(nk) <= f.trunc:
            c[nk] = a.subs_power(k)
    return f._new(c)


def _log_derivative_exp(g: TruncatedSeries) -> TruncatedSeries:
    """Ordinary ``exp`` of a series with zero constant term (Euler-operator recursion)."""
    n, r = g.trunc, g.rank
    zero = (0,) * r
    F = {zero: RationalFunction(LaurentPoly.const(1, g.var), _canonical=True)}
    gitems = [(k, sum(k), a) for k, a in g.items()]
    for m in _keys_upto(r, n)[1:]:
        dm = sum(m)
        acc = None
        for k, dk, a in gitems:
            rest = tuple(x - y for x, y in zip(m, k))
            if min(rest) < 0:
                continue
            fb = F.get(rest)
            if fb is None:
                continue
            t = a * fb * dk
            acc = t if acc is None else acc + t
        if acc is not None and acc:
            F[m] = acc / dm
    return g._new(F)


def _ordinary_log(f: TruncatedSeries) -> TruncatedSeries:
    """Ordinary ``log`` of a series with constant term 1."""
    n, r = f.trunc, f.rank
    zero = (0,) * r
    G: dict[tuple, RationalFunction] = {}
    fitems = [(k, a) for k, a in f.items() if k != zero]
    for m in _keys_upto(r, n)[1:]:
        dm = sum(m)
        acc = f[m] * dm
        # dm * G_m = dm * F_m - sum_{0 < a < m} |a| G_a F_{m-a}
        for k, fk in fitems:
            rest = tuple(x - y for x, y in zip(m, k))
            if min(rest) < 0 or rest == zero:
                continue
            ga = G.get(rest)
            if ga is None:
                continue
            acc = acc - ga * fk * sum(rest)
        if acc:
            G[m] = acc / dm
    return f._new(G)


def plethystic_exp(f: TruncatedSeries) -> TruncatedSeries:
    """``Exp(f) = exp(sum_k adams(f, k) / k)``, exact up to ``f.trunc``."""
    zero = (0,) * f.rank
    if zero in f.keys():
        raise ArithmeticError_("plethystic_exp requires zero constant term")
    g = TruncatedSeries(f.rank, f.trunc, {}, f.var)
    for k in range(1, f.trunc + 1):
        ak = adams(f, k)
        if len(ak):
            g = g + ak.scale(Fraction(1, k))
    return _log_derivative_exp(g)


def plethystic_log(f: TruncatedSeries) -> TruncatedSeries:
    """Inverse of :func:`plethystic_exp` (Moebius inversion of the Adams sum)."""
    one = RationalFunction(LaurentPoly.const(1, f.var), _canonical=True)
    if f.constant_term() != one:
        raise ArithmeticError_("plethystic_log requires constant term 1")
    lg = _ordinary_log(f)
    out = TruncatedSeries(f.rank, f.trunc, {}, f.var)
    for k in range(1, f.trunc + 1):
        mu = mobius(k)
        if mu == 0:
            continue
        ak = adams(lg, k)
        if len(ak):
            out = out + ak.scale(Fraction(mu, k))
    return out


def series_from_terms(rank: int, trunc: int, terms: Iterable[tuple[tuple, object]], var: str = "v") -> TruncatedSeries:
    c: dict = {}
    for k, a in terms:
        a = _coerce_rf(a, var)
        c[tuple(k)] = c[tuple(k)] + a if tuple(k) in c else a
    return TruncatedSeries(rank, trunc, c, var)
