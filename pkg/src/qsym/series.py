"""Truncated power series in t over a generic commutative coefficient ring.

Coefficients are stored plain: ``coeffs[k]`` multiplies t^k.  The k! of
exponential generating functions is applied only when a value is read out
(:meth:`TruncSeries.egf`) or when an exponential is built (:func:`exp_linear`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .algebra.logpoly import L as LOG_Q
from .algebra.logpoly import LogPoly
from .algebra.mpoly import MPoly
from .algebra.poly import PolyQ
from .algebra.ratfunc import RatFuncQ
from .errors import DomainError, NotInvertibleError, OrderMismatchError


def _is_zero(c) -> bool:
    if isinstance(c, (int, Fraction)):
        return c == 0
    return c.is_zero()


def _invert(c):
    """Inverse of a constant term, or None when the ring has no such inverse."""
    if isinstance(c, (int, Fraction)):
        return None if c == 0 else Fraction(1) / c
    is_unit = getattr(c, "is_unit", None)
    if is_unit is not None and is_unit():
        return c.inverse()
    return None


class TruncSeries:
    """c_0 + c_1 t + ... + c_K t^K, all arithmetic modulo t^(K+1)."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order: int):
        if order < 0:
            raise DomainError("series order must be >= 0")
        coeffs = list(coeffs)[: order + 1]
        coeffs.extend([0] * (order + 1 - len(coeffs)))
        self.coeffs = tuple(coeffs)
        self.order = order

    @classmethod
    def constant(cls, c, order: int) -> TruncSeries:
        return cls([c], order)

    def coefficient(self, k: int):
        return self.coeffs[k]

    def egf(self, k: int):
        """k! times the coefficient of t^k."""
        c = self.coeffs[k]
        f = factorial(k)
        return c * f if f != 1 else c

    def _check(self, other: TruncSeries) -> None:
        if self.order != other.order:
            raise OrderMismatchError(f"series orders differ: {self.order} vs {other.order}")

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            return TruncSeries([self.coeffs[0] + other, *self.coeffs[1:]], self.order)
        self._check(other)
        return TruncSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> TruncSeries:
        return TruncSeries([x * c for x in self.coeffs], self.order)

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            return series_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        if isinstance(other, TruncSeries):
            return series_div(self, other)
        return self.scale(Fraction(1) / other)

    def __pow__(self, e: int):
        out = TruncSeries.constant(1, self.order)
        for _ in range(e):
            out = series_mul(out, self)
        return out

    def rescale(self, c) -> TruncSeries:
        """Substitute t -> c*t."""
        return TruncSeries([x * c**k for k, x in enumerate(self.coeffs)], self.order)

    def map(self, fn) -> TruncSeries:
        return TruncSeries([fn(c) for c in self.coeffs], self.order)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        if self.order != other.order:
            return False
        return all(_is_zero(a - b) for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def __repr__(self):
        return f"TruncSeries(order={self.order}, coeffs={list(self.coeffs)!r})"


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Cauchy product truncated at the common order."""
    a._check(b)
    K = a.order
    out = [0] * (K + 1)
    for i, x in enumerate(a.coeffs):
        if _is_zero(x):
            continue
        for j in range(K + 1 - i):
            y = b.coeffs[j]
            if not _is_zero(y):
                out[i + j] = out[i + j] + x * y
    return TruncSeries(out, K)


def series_div(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """The series x with x*b = a.

    Needs an invertible constant term, except over Q(q)[L] where an exact
    quotient is accepted whenever each step divides (L-multiples cancel).
    """
    a._check(b)
    K = a.order
    b0 = b.coeffs[0]
    inv = _invert(b0)
    if inv is None and not isinstance(b0, LogPoly):
        raise NotInvertibleError(f"constant term {b0!r} is not invertible")
    out = []
    for n in range(K + 1):
        acc = a.coeffs[n]
        for j in range(1, n + 1):
            y = b.coeffs[j]
            if not _is_zero(y):
                acc = acc - y * out[n - j]
        if inv is not None:
            out.append(acc * inv)
        else:
            acc = acc if isinstance(acc, LogPoly) else LogPoly.constant(acc)
            out.append(acc.divide_exact(b0))
    return TruncSeries(out, K)


def exp_linear(c, order: int) -> TruncSeries:
    """exp(c*t) = sum_k c^k t^k / k!."""
    out = []
    power = 1
    for k in range(order + 1):
        out.append(power * Fraction(1, factorial(k)) if k else 1)
        power = power * c
    return TruncSeries(out, order)


def qexp_minus_one(a: int, order: int) -> TruncSeries:
    """q^a e^(a t) - 1 with Q(q)-valued coefficients."""
    qa = RatFuncQ(PolyQ.monomial(a))
    out = [LogPoly.constant(qa - 1)]
    for k in range(1, order + 1):
        out.append(LogPoly.constant(qa * Fraction(a**k, factorial(k))))
    return TruncSeries(out, order)


def log_plus_t(order: int, scale: int = 1) -> TruncSeries:
    """scale * (L + t)."""
    return TruncSeries([LOG_Q * scale, LogPoly.constant(scale)], order)


def bernoulli_gf(order: int, base: int = 1) -> TruncSeries:
    """(a L + t) / (q^a e^t - 1) with a = base, by series division."""
    top = TruncSeries([LOG_Q * base, LogPoly.constant(1)], order)
    qa = RatFuncQ(PolyQ.monomial(base))
    bottom = [LogPoly.constant(qa - 1)]
    bottom += [LogPoly.constant(qa * Fraction(1, factorial(k))) for k in range(1, order + 1)]
    return series_div(top, TruncSeries(bottom, order))


def geometric_qexp(w: int, order: int) -> TruncSeries:
    """sum_{i<w} q^i e^(i t), summed directly from its definition."""
    if w < 1:
        raise DomainError("geometric_qexp needs w >= 1")
    out = []
    for k in range(order + 1):
        poly = PolyQ([Fraction(i**k, factorial(k)) for i in range(w)])  # 0**0 == 1
        out.append(LogPoly.constant(poly))
    return TruncSeries(out, order)


# -- closed forms for the integral quotients ---------------------------------

_FAMILIES = {"L23": (0, 1, 2, 3), "L13": (0, 1, 2, 3), "L12": (0, 1)}


@dataclass(frozen=True)
class LambdaSpec:
    family: str
    index: int
    w: tuple[int, int, int]

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise DomainError(f"unknown quotient family {self.family!r}")
        if self.index not in _FAMILIES[self.family]:
            raise DomainError(f"index {self.index} not admissible for {self.family}")
        if len(self.w) != 3 or any(int(x) != x or x < 1 for x in self.w):
            raise DomainError(f"w must be three positive integers, got {self.w}")

    @property
    def arity(self) -> int:
        """Number of y variables in the closed form."""
        if self.family == "L12":
            return 1 - self.index
        return 3 - self.index


def build_closed_form(spec: LambdaSpec, order: int) -> TruncSeries:
    """Closed-form generating function of the quotient described by ``spec``."""
    w1, w2, w3 = spec.w
    W = w1 * w2 * w3
    pair = (w2 * w3, w1 * w3, w1 * w2)
    single = (w1, w2, w3)
    i = spec.index
    if spec.family == "L12" and i == 1:
        num = [qexp_minus_one(a, order) for a in pair]
        den = [qexp_minus_one(a, order) for a in single]
        scalar = TruncSeries.constant(LogPoly.constant(Fraction(1, W)), order)
        for s in num:
            scalar = scalar * s
        for s in den:
            scalar = scalar / s
        return scalar.map(MPoly.constant)
    if spec.family == "L12":
        prefactor, den_bases, exponent = Fraction(W), single, sum(pair) * MPoly.var("y")
        log_power, num_power = 3, 0
    else:
        den_bases = pair if spec.family == "L23" else single
        prefactor = Fraction(W) ** ((2 if spec.family == "L23" else 1) - i)
        ys = [MPoly.var(f"y{j}") for j in range(1, 4 - i)]
        exponent = W * sum(ys, MPoly.constant(0))
        log_power, num_power = 3 - i, i
    scalar = TruncSeries.constant(LogPoly.constant(prefactor), order)
    scalar = scalar * log_plus_t(order) ** log_power
    for _ in range(num_power):
        scalar = scalar * qexp_minus_one(W, order)
    for a in den_bases:
        scalar = scalar / qexp_minus_one(a, order)
    return scalar.map(MPoly.constant) * exp_linear(exponent, order)


def permute_spec(spec: LambdaSpec, perm) -> LambdaSpec:
    """Apply a permutation of the slots (w1, w2, w3)."""
    return LambdaSpec(spec.family, spec.index, tuple(spec.w[p] for p in perm))


def lambda13_substitution(spec: LambdaSpec, order: int) -> tuple[TruncSeries, TruncSeries]:
    """Both sides of the L23 -> L13 reparametrization.

    Left: the L23 closed form at (w2 w3, w1 w3, w1 w2).  Right: the L13 closed
    form at w with t -> W t and q -> q^W (so L -> W L), W = w1 w2 w3.
    """
    w1, w2, w3 = spec.w
    W = w1 * w2 * w3
    left = build_closed_form(LambdaSpec("L23", spec.index, (w2 * w3, w1 * w3, w1 * w2)), order)
    right = build_closed_form(LambdaSpec("L13", spec.index, spec.w), order)
    right = right.rescale(W).map(lambda c: c if isinstance(c, (int, Fraction)) else c.substitute_power(W))
    return left, right


__all__ = [
    "LambdaSpec",
    "TruncSeries",
    "bernoulli_gf",
    "build_closed_form",
    "exp_linear",
    "geometric_qexp",
    "lambda13_substitution",
    "log_plus_t",
    "permute_spec",
    "qexp_minus_one",
    "series_div",
    "series_mul",
]
