"""Truncated Laurent series in eps, used to expand around q = 1 + eps."""

from __future__ import annotations

from fractions import Fraction

from ..config import LIMITS
from ..errors import DomainError, PrecisionError
from .logpoly import LogPoly
from .poly import FPoly, cyclotomic, to_fraction
from .ratfunc import RatFuncQ


class EpsLaurent:
    """sum_{i < order} coeffs[i] * eps^(valuation + i) + O(eps^(valuation + order)).

    A nonzero series has ``coeffs[0] != 0``.  A series with no known nonzero
    term has ``order == 0`` and stands for O(eps^valuation).
    """

    __slots__ = ("valuation", "coeffs")

    def __init__(self, valuation: int, coeffs):
        coeffs = [Fraction(c) for c in coeffs]
        shift = 0
        while shift < len(coeffs) and coeffs[shift] == 0:
            shift += 1
        self.valuation = valuation + shift
        self.coeffs = tuple(coeffs[shift:])

    @property
    def order(self) -> int:
        """Number of retained terms."""
        return len(self.coeffs)

    @property
    def precision(self) -> int:
        """Absolute precision: the series is known modulo eps^precision."""
        return self.valuation + len(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, k: int) -> Fraction:
        if k >= self.precision:
            raise PrecisionError(f"eps^{k} lies beyond the retained precision {self.precision}")
        if k < self.valuation:
            return Fraction(0)
        return self.coeffs[k - self.valuation]

    def truncate(self, precision: int) -> EpsLaurent:
        keep = max(0, min(len(self.coeffs), precision - self.valuation))
        if keep == 0:
            return EpsLaurent(min(precision, self.precision), [])
        return EpsLaurent(self.valuation, self.coeffs[:keep])

    def _dense(self, lo: int, hi: int) -> list[Fraction]:
        return [self.coefficient(k) if k >= self.valuation else Fraction(0) for k in range(lo, hi)]

    def __add__(self, other):
        other = _coerce(other, self)
        prec = min(self.precision, other.precision)
        lo = min(self.valuation, other.valuation, prec)
        a = self._dense(lo, prec)
        b = other._dense(lo, prec)
        return EpsLaurent(lo, [x + y for x, y in zip(a, b)]) if prec > lo else EpsLaurent(prec, [])

    __radd__ = __add__

    def __neg__(self):
        return EpsLaurent(self.valuation, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_coerce(other, self))

    def __rsub__(self, other):
        return _coerce(other, self) + (-self)

    def __mul__(self, other):
        other = _coerce(other, self)
        if self.is_zero() or other.is_zero():
            val = min(
                self.valuation + (other.valuation if other.coeffs else other.precision),
                other.valuation + (self.valuation if self.coeffs else self.precision),
            )
            return EpsLaurent(val, [])
        n = min(self.order, other.order)
        out = [Fraction(0)] * n
        for i in range(n):
            ai = self.coeffs[i]
            if ai == 0:
                continue
            for j in range(n - i):
                out[i + j] += ai * other.coeffs[j]
        return EpsLaurent(self.valuation + other.valuation, out)

    __rmul__ = __mul__

    def inverse(self) -> EpsLaurent:
        if self.is_zero():
            raise ZeroDivisionError("cannot invert a series with no known nonzero term")
        inv = _series_inverse(list(self.coeffs), self.order)
        return EpsLaurent(-self.valuation, inv)

    def __truediv__(self, other):
        return self * _coerce(other, self).inverse()

    def agrees_with(self, other: EpsLaurent) -> bool:
        """Equality of all coefficients both series know."""
        prec = min(self.precision, other.precision)
        lo = min(self.valuation, other.valuation)
        return all(
            (self.coefficient(k) if k < self.precision else 0)
            == (other.coefficient(k) if k < other.precision else 0)
            for k in range(lo, prec)
        )

    def __eq__(self, other):
        if not isinstance(other, EpsLaurent):
            return NotImplemented
        return self.valuation == other.valuation and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.valuation, self.coeffs))

    def render(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            k = self.valuation + i
            mono = "" if k == 0 else ("eps" if k == 1 else f"eps^{k}")
            a = abs(c)
            body = (mono if a == 1 else f"{a}*{mono}") if mono else str(a)
            sign = "-" if c < 0 else "+"
            parts.append((body if sign == "+" else "-" + body) if not parts else f" {sign} {body}")
        tail = f"O(eps^{self.precision})"
        return ("".join(parts) + " + " + tail) if parts else tail

    def __repr__(self):
        return f"EpsLaurent({self.render()!r})"


def _coerce(x, like: EpsLaurent) -> EpsLaurent:
    if isinstance(x, EpsLaurent):
        return x
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        if x == 0:
            return EpsLaurent(like.precision, [])
        # exact constant: give it enough terms to never limit precision
        n = max(like.precision, 1)
        return EpsLaurent(0, [x] + [0] * (n - 1))
    raise TypeError(f"cannot combine EpsLaurent with {type(x).__name__}")


def _series_inverse(c: list[Fraction], n: int) -> list[Fraction]:
    if c[0] == 0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    inv = [Fraction(0)] * n
    inv[0] = 1 / c[0]
    for k in range(1, n):
        s = Fraction(0)
        for j in range(1, min(k, len(c) - 1) + 1):
            s += c[j] * inv[k - j]
        inv[k] = -s * inv[0]
    return inv


_SHIFT = FPoly([1, 1])


def _shifted(p: FPoly, n: int) -> list[Fraction]:
    """Coefficients of p(1 + eps) up to eps^(n-1)."""
    out = [to_fraction(c) for c in p(_SHIFT).coeffs()[:n]]
    return out + [Fraction(0)] * (n - len(out))


def _ratfunc_series(c: RatFuncQ, n: int) -> EpsLaurent:
    """c(1 + eps) with n retained terms."""
    num, cyc, rest = c._canonical()
    pole = 0
    den_series = [Fraction(1)] + [Fraction(0)] * (n - 1)
    for d, e in cyc:
        if d == 1:
            pole = e
            continue
        fac = _shifted(cyclotomic(d), n)
        for _ in range(e):
            den_series = _mul_trunc(den_series, fac, n)
    if rest.degree() > 0:
        den_series = _mul_trunc(den_series, _shifted(rest, n), n)
    top = _shifted(num, n)
    quotient = _mul_trunc(top, _series_inverse(den_series, n), n)
    return EpsLaurent(-pole, quotient)


def _mul_trunc(a: list, b: list, n: int) -> list:
    out = [Fraction(0)] * n
    for i, x in enumerate(a[:n]):
        if x == 0:
            continue
        for j in range(min(len(b), n - i)):
            out[i + j] += x * b[j]
    return out


def log1p_series(n: int) -> EpsLaurent:
    """log(1 + eps) = eps - eps^2/2 + eps^3/3 - ... with n retained terms."""
    return EpsLaurent(1, [Fraction((-1) ** (k + 1), k) for k in range(1, n + 1)])


def eps_expand(a, order: int, *, max_pole=None) -> EpsLaurent:
    """Substitute q = 1 + eps and L = log(1 + eps) and keep ``order`` terms.

    Cancellation between the L-free part and the L-parts can push the first
    nonzero term far to the right, so the working precision is widened until
    ``order`` terms past the true valuation are exact.
    """
    if order < 1:
        raise DomainError("eps_expand needs order >= 1")
    if isinstance(a, RatFuncQ):
        a = LogPoly._raw((a,))
    elif not isinstance(a, LogPoly):
        a = LogPoly.constant(a)
    bound = LIMITS.max_pole_order if max_pole is None else max_pole
    if a.is_zero():
        return EpsLaurent(0, [])
    poles = [c.pole_order_at_one() for c in a.coeffs]
    if max(poles) > bound:
        raise PrecisionError(f"pole order {max(poles)} at q = 1 exceeds bound {bound}")
    lowest = min(j - p for j, p in enumerate(poles) if not a.coeffs[j].is_zero())
    extra = 0
    while True:
        target = lowest + order + extra
        total = None
        for j, c in enumerate(a.coeffs):
            if c.is_zero():
                continue
            n = target - j + poles[j]
            if n <= 0:
                continue
            term = _ratfunc_series(c, n)
            if j:
                term = term * log1p_series(n) ** j
                term = term.truncate(target)
            total = term if total is None else total + term
        if total is not None and not total.is_zero() and total.valuation + order <= total.precision:
            return total.truncate(total.valuation + order)
        extra = 2 * extra + order
        if extra > 64 * (order + bound):
            raise PrecisionError("cancellation exceeded the working precision budget")


def _pow(s: EpsLaurent, e: int) -> EpsLaurent:
    out = s
    for _ in range(e - 1):
        out = out * s
    return out


EpsLaurent.__pow__ = _pow
