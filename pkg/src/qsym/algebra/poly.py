"""Dense univariate polynomials in q over the rationals.

``PolyQ`` is an immutable wrapper around ``flint.fmpq_poly``.  Coefficients
are exposed as a tuple of :class:`fractions.Fraction`, index = power of q,
with no trailing zeros (the zero polynomial is the empty tuple).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

import flint

from ..config import LIMITS
from ..errors import ExponentCapError

FPoly = flint.fmpq_poly
_ZERO = FPoly([])
_ONE = FPoly([1])


def to_fmpq(c) -> flint.fmpq:
    if isinstance(c, Fraction):
        return flint.fmpq(c.numerator, c.denominator)
    return flint.fmpq(c)


def to_fraction(c) -> Fraction:
    if isinstance(c, flint.fmpq):
        return Fraction(int(c.p), int(c.q))
    return Fraction(c)


def fpoly(coeffs) -> FPoly:
    """Build an fmpq_poly from ints / Fractions (ascending powers)."""
    return FPoly([to_fmpq(c) for c in coeffs])


def monomial(power: int, coeff=1) -> FPoly:
    if power < 0:
        raise ValueError("negative power")
    if power > LIMITS.max_q_degree:
        raise ExponentCapError(f"q-degree {power} exceeds cap {LIMITS.max_q_degree}")
    return FPoly([0] * power + [to_fmpq(coeff)])


def inflate(p: FPoly, w: int) -> FPoly:
    """Return p(q^w)."""
    if w == 1 or p.degree() <= 0:
        return p
    deg = p.degree() * w
    if deg > LIMITS.max_q_degree:
        raise ExponentCapError(f"q-degree {deg} exceeds cap {LIMITS.max_q_degree}")
    out = [0] * (deg + 1)
    for i, c in enumerate(p.coeffs()):
        out[i * w] = c
    return FPoly(out)


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> FPoly:
    return FPoly(flint.fmpz_poly.cyclotomic(d))


@lru_cache(maxsize=None)
def cyclotomic_power(d: int, e: int) -> FPoly:
    if e == 0:
        return _ONE
    if e == 1:
        return cyclotomic(d)
    half = cyclotomic_power(d, e // 2)
    sq = half * half
    return sq * cyclotomic(d) if e % 2 else sq


def _divisors(n: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


@lru_cache(maxsize=None)
def cyclotomic_pullback(d: int, w: int) -> tuple[int, ...]:
    """Indices d' with prod Phi_{d'}(q) = Phi_d(q^w).

    A root x of Phi_d(x^w) has order d' dividing d*w with d'/gcd(d', w) = d.
    """
    return tuple(e for e in _divisors(d * w) if e // gcd(e, w) == d)


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic_indices_up_to_degree(deg: int) -> tuple[int, ...]:
    """All d with phi(d) <= deg (phi(d) >= sqrt(d/2) bounds the search)."""
    return tuple(d for d in range(1, 2 * deg * deg + 3) if totient(d) <= deg)


class PolyQ:
    """Immutable polynomial in q with rational coefficients."""

    __slots__ = ("_p",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, FPoly):
            self._p = coeffs
        else:
            self._p = fpoly(coeffs)

    @classmethod
    def q(cls) -> PolyQ:
        return cls(FPoly([0, 1]))

    @classmethod
    def monomial(cls, power: int, coeff=1) -> PolyQ:
        return cls(monomial(power, coeff))

    @property
    def flint(self) -> FPoly:
        return self._p

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(to_fraction(c) for c in self._p.coeffs())

    def degree(self) -> int:
        """Degree in q; -1 for the zero polynomial."""
        return self._p.degree()

    def is_zero(self) -> bool:
        return self._p.is_zero()

    def leading(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        return to_fraction(self._p.leading_coefficient())

    def monic(self) -> PolyQ:
        if self.is_zero():
            return self
        return PolyQ(self._p / self._p.leading_coefficient())

    def gcd(self, other: PolyQ) -> PolyQ:
        return PolyQ(self._p.gcd(_coerce(other)._p))

    def substitute_power(self, w: int) -> PolyQ:
        return PolyQ(inflate(self._p, w))

    def __call__(self, x):
        """Evaluate at an exact rational point."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        other = _coerce(other)
        return PolyQ(self._p + other._p) if other is not NotImplemented else other

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return PolyQ(self._p - other._p) if other is not NotImplemented else other

    def __rsub__(self, other):
        other = _coerce(other)
        return PolyQ(other._p - self._p) if other is not NotImplemented else other

    def __mul__(self, other):
        other = _coerce(other)
        return PolyQ(self._p * other._p) if other is not NotImplemented else other

    __rmul__ = __mul__

    def __neg__(self):
        return PolyQ(-self._p)

    def __pow__(self, e: int):
        return PolyQ(self._p ** e)

    def __divmod__(self, other):
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        quo, rem = divmod(self._p, other._p)
        return PolyQ(quo), PolyQ(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._p == other._p

    def __hash__(self):
        return hash(("PolyQ", self.coeffs))

    def __repr__(self):
        return f"PolyQ({render_poly(self._p)!r})"

    def __str__(self):
        return render_poly(self._p)


def _coerce(x):
    if isinstance(x, PolyQ):
        return x
    if isinstance(x, (int, Fraction)):
        return PolyQ(FPoly([to_fmpq(x)]))
    if isinstance(x, FPoly):
        return PolyQ(x)
    return NotImplemented


def _fmt_coeff_term(c: Fraction, mono: str, first: bool) -> str:
    sign = "-" if c < 0 else "+"
    a = abs(c)
    if mono:
        body = mono if a == 1 else f"{a}*{mono}"
    else:
        body = str(a)
    if first:
        return body if sign == "+" else "-" + body
    return f" {sign} {body}"


def render_terms(terms) -> str:
    """Render (coefficient, monomial-string) pairs as a signed sum."""
    parts = []
    for c, mono in terms:
        if c == 0:
            continue
        parts.append(_fmt_coeff_term(c, mono, not parts))
    return "".join(parts) if parts else "0"


def q_monomial(i: int) -> str:
    if i == 0:
        return ""
    return "q" if i == 1 else f"q^{i}"


def render_poly(p: FPoly) -> str:
    """Ascending-power rendering, e.g. ``q + 4*q^2``."""
    return render_terms(
        (to_fraction(c), q_monomial(i)) for i, c in enumerate(p.coeffs())
    )


def render_factor(p: FPoly) -> str:
    """Compact descending rendering used for denominator factors, e.g. ``(q-1)``."""
    out = []
    coeffs = p.coeffs()
    for i in range(len(coeffs) - 1, -1, -1):
        c = to_fraction(coeffs[i])
        if c == 0:
            continue
        mono = q_monomial(i)
        a = abs(c)
        body = (mono if a == 1 else f"{a}*{mono}") if mono else str(a)
        if not out:
            out.append(body if c > 0 else "-" + body)
        else:
            out.append(("+" if c > 0 else "-") + body)
    return "(" + "".join(out) + ")"
