"""Polynomials in the formal symbol L (standing for log q) over Q(q)."""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from ..errors import NotInvertibleError
from .poly import (
    FPoly,
    PolyQ,
    cyclotomic,
    cyclotomic_power,
    q_monomial,
    render_factor,
    render_terms,
    to_fraction,
)
from .ratfunc import ONE as RF_ONE
from .ratfunc import ZERO as RF_ZERO
from .ratfunc import RatFuncQ, as_ratfunc

_SCALARS = (int, Fraction)


def _strip(coeffs) -> tuple:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return tuple(coeffs)


class LogPoly:
    """Immutable element of Q(q)[L]; ``coeffs[j]`` multiplies L^j."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _strip(as_ratfunc(c) for c in coeffs)

    @classmethod
    def _raw(cls, coeffs) -> LogPoly:
        obj = object.__new__(cls)
        obj.coeffs = _strip(coeffs)
        return obj

    @classmethod
    def constant(cls, c) -> LogPoly:
        return cls._raw((as_ratfunc(c),))

    @classmethod
    def L(cls) -> LogPoly:
        return cls._raw((RF_ZERO, RF_ONE))

    def degree(self) -> int:
        """L-degree; -1 for zero."""
        return len(self.coeffs) - 1

    def coeff(self, j: int) -> RatFuncQ:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else RF_ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_unit(self) -> bool:
        return len(self.coeffs) == 1

    def inverse(self) -> LogPoly:
        if not self.is_unit():
            raise NotInvertibleError("only nonzero L-free elements are units of Q(q)[L]")
        return LogPoly._raw((self.coeffs[0].inverse(),))

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for j, c in enumerate(b):
            out[j] = out[j] + c
        return LogPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LogPoly._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (RatFuncQ, int, Fraction)):
            return LogPoly._raw([c * other for c in self.coeffs])
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        if len(b) == 1:
            return LogPoly._raw([c * b[0] for c in a])
        if len(a) == 1:
            return LogPoly._raw([a[0] * c for c in b])
        out = [None] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                t = x * y
                k = i + j
                out[k] = t if out[k] is None else out[k] + t
        return LogPoly._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _SCALARS):
            return self * (Fraction(1) / other)
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def divide_exact(self, other) -> LogPoly:
        """Quotient in Q(q)[L] when ``other`` divides ``self``; NotInvertibleError otherwise."""
        other = _coerce(other)
        if other is NotImplemented or other.is_zero():
            raise NotInvertibleError("division by zero in Q(q)[L]")
        rem = list(self.coeffs)
        d = len(other.coeffs) - 1
        lead_inv = other.coeffs[-1].inverse()
        quo = [RF_ZERO] * max(0, len(rem) - d)
        for j in range(len(rem) - 1, d - 1, -1):
            c = rem[j] * lead_inv
            if c.is_zero():
                continue
            quo[j - d] = c
            for i, b in enumerate(other.coeffs):
                rem[j - d + i] = rem[j - d + i] - c * b
        if any(not r.is_zero() for r in rem[:d]):
            raise NotInvertibleError("not divisible in Q(q)[L]")
        return LogPoly._raw(quo)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = ONE
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(x == y for x, y in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def substitute_power(self, w: int) -> LogPoly:
        return substitute_power(self, w)

    def evaluate(self, q, log_q):
        """Evaluate with q and L = log_q in any field that accepts rationals."""
        acc = 0
        for j in range(len(self.coeffs) - 1, -1, -1):
            acc = acc * log_q + _eval_ratfunc(self.coeffs[j], q)
        return acc

    # -- rendering -------------------------------------------------------

    def render(self) -> str:
        """Single-divide form: numerator in q and L over a common denominator."""
        if not self.coeffs:
            return "0"
        common = {}
        rest = None
        for c in self.coeffs:
            _, cyc, r = c._canonical()
            for d, e in cyc:
                common[d] = max(common.get(d, 0), e)
            if r.degree() > 0:
                rest = r if rest is None else rest * divmod(r, rest.gcd(r))[0]
        terms = []
        scale = 1
        nums = []
        for c in self.coeffs:
            num, cyc, r = c._canonical()
            have = dict(cyc)
            for d, e in common.items():
                extra = e - have.get(d, 0)
                if extra:
                    num = num * cyclotomic_power(d, extra)
            if rest is not None:
                num = num * divmod(rest, r)[0]
            nums.append(num)
        for num in nums:
            for coef in num.coeffs():
                scale = _lcm(scale, int(to_fraction(coef).denominator))
        for j, num in enumerate(nums):
            for i, coef in enumerate(num.coeffs()):
                mono = q_monomial(i)
                if j:
                    lmono = "L" if j == 1 else f"L^{j}"
                    mono = f"{mono}*{lmono}" if mono else lmono
                terms.append((to_fraction(coef) * scale, mono))
        top = render_terms(terms)
        factors = []
        if scale != 1:
            factors.append(str(scale))
        for d in sorted(common):
            e = common[d]
            factors.append(render_factor(cyclotomic(d)) + (f"^{e}" if e > 1 else ""))
        if rest is not None:
            factors.append(render_factor(rest))
        if not factors:
            return top
        if sum(1 for c, _ in terms if c != 0) > 1:
            top = f"({top})"
        den = "*".join(factors)
        if len(factors) > 1:
            den = f"({den})"
        return f"{top}/{den}"

    def __repr__(self):
        return f"LogPoly({self.render()!r})"

    __str__ = render


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _eval_ratfunc(c: RatFuncQ, q):
    num, cyc, rest = c._s
    top = _horner(num, q)
    bot = _horner(rest, q)
    for d, e in cyc:
        bot = bot * _horner(cyclotomic(d), q) ** e
    return top / bot


def _horner(p: FPoly, x):
    acc = 0
    for c in reversed(p.coeffs()):
        acc = acc * x + to_fraction(c)
    return acc


def _coerce(x):
    if isinstance(x, LogPoly):
        return x
    if isinstance(x, (int, Fraction, RatFuncQ, PolyQ, FPoly)):
        return LogPoly.constant(x)
    return NotImplemented


def substitute_power(a: LogPoly, w: int) -> LogPoly:
    """q -> q^w together with L -> w*L (since log q^w = w log q)."""
    if w < 1:
        raise ValueError("substitute_power needs w >= 1")
    if w == 1:
        return a
    return LogPoly._raw([c.substitute_power(w) * (w ** j) for j, c in enumerate(a.coeffs)])


ZERO = LogPoly._raw(())
ONE = LogPoly._raw((RF_ONE,))
L = LogPoly.L()
