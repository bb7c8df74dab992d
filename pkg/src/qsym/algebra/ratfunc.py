"""The rational function field Q(q).

A value is stored as ``num / (rest * prod_d Phi_d^e_d)`` where ``Phi_d`` is the
d-th cyclotomic polynomial and ``rest`` is a monic polynomial with no
cyclotomic factor.  Every denominator produced by q-Bernoulli arithmetic is a
product of ``q^a - 1`` factors, so in practice ``rest == 1`` and addition only
needs exponent maxima instead of polynomial gcds.

Numerators are cancelled lazily.  ``num``/``den``, hashing and rendering go
through the reduced form, which is the unique gcd-reduced representative with a
monic denominator.  Equality is tested by subtraction and needs no reduction.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import NotInvertibleError
from .poly import (
    FPoly,
    PolyQ,
    cyclotomic,
    cyclotomic_indices_up_to_degree,
    cyclotomic_power,
    cyclotomic_pullback,
    inflate,
    render_factor,
    render_poly,
    to_fmpq,
    to_fraction,
)

_ZERO = FPoly([])
_ONE = FPoly([1])


def _merge_add(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for d, e in b:
        out[d] = out.get(d, 0) + e
    return tuple(sorted(out.items()))


def _lift(num: FPoly, cyc: tuple, target: dict) -> FPoly:
    """Multiply num by the cyclotomic factors that ``target`` has beyond ``cyc``."""
    have = dict(cyc)
    for d, e in target.items():
        extra = e - have.get(d, 0)
        if extra:
            num = num * cyclotomic_power(d, extra)
    return num


def _extract_cyclotomic(den: FPoly) -> tuple[tuple, FPoly]:
    """Split a monic den into (cyclotomic exponents, cyclotomic-free residual)."""
    cyc = {}
    for d in cyclotomic_indices_up_to_degree(max(den.degree(), 0)):
        if den.degree() <= 0:
            break
        phi = cyclotomic(d)
        if phi.degree() > den.degree():
            continue
        while True:
            quo, rem = divmod(den, phi)
            if not rem.is_zero():
                break
            den = quo
            cyc[d] = cyc.get(d, 0) + 1
    return tuple(sorted(cyc.items())), den


def _reduce(num: FPoly, cyc: tuple, rest: FPoly):
    if num.is_zero():
        return _ZERO, (), _ONE
    kept = []
    for d, e in cyc:
        phi = cyclotomic(d)
        while e:
            quo, rem = divmod(num, phi)
            if not rem.is_zero():
                break
            num = quo
            e -= 1
        if e:
            kept.append((d, e))
    if rest.degree() > 0:
        g = num.gcd(rest)
        if g.degree() > 0:
            num = divmod(num, g)[0]
            rest = divmod(rest, g)[0]
        lc = rest.leading_coefficient()
        if lc != 1:
            num = num / lc
            rest = rest / lc
    return num, tuple(kept), rest


class RatFuncQ:
    """Immutable element of Q(q)."""

    __slots__ = ("_s", "_reduced")

    def __init__(self, num=None, den=None):
        # public constructor normalizes; internal code uses _make
        if num is None:
            num = _ZERO
        num = _as_fpoly(num)
        if den is None:
            self._s = (num, (), _ONE)
            self._reduced = True
            return
        den = _as_fpoly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        lc = den.leading_coefficient()
        if lc != 1:
            num, den = num / lc, den / lc
        cyc, rest = _extract_cyclotomic(den)
        self._s = _reduce(num, cyc, rest)
        self._reduced = True

    @classmethod
    def _make(cls, num: FPoly, cyc: tuple = (), rest: FPoly = _ONE, reduced: bool = False):
        obj = object.__new__(cls)
        if num.is_zero():
            obj._s = (_ZERO, (), _ONE)
            obj._reduced = True
        elif rest.degree() > 0 and not reduced:
            obj._s = _reduce(num, cyc, rest)
            obj._reduced = True
        else:
            obj._s = (num, cyc, rest)
            obj._reduced = reduced or not cyc
        return obj

    @classmethod
    def constant(cls, c) -> RatFuncQ:
        return cls._make(FPoly([to_fmpq(c)]), reduced=True)

    @classmethod
    def q_minus_one_power(cls, a: int, e: int, numerator=None) -> RatFuncQ:
        """numerator / (q^a - 1)^e."""
        num = _ONE if numerator is None else _as_fpoly(numerator)
        cyc = tuple((d, e) for d in _divisors(a)) if e else ()
        return cls._make(num, cyc)

    # -- canonical views -------------------------------------------------

    def _canonical(self):
        if not self._reduced:
            s = _reduce(*self._s)
            self._s = s  # single attribute store keeps concurrent readers consistent
            self._reduced = True
            return s
        return self._s

    @property
    def num(self) -> PolyQ:
        return PolyQ(self._canonical()[0])

    @property
    def den(self) -> PolyQ:
        _, cyc, rest = self._canonical()
        den = rest
        for d, e in cyc:
            den = den * cyclotomic_power(d, e)
        return PolyQ(den)

    @property
    def cyclotomic_exponents(self) -> dict[int, int]:
        return dict(self._canonical()[1])

    def pole_order_at_one(self) -> int:
        return dict(self._canonical()[1]).get(1, 0)

    def is_zero(self) -> bool:
        return self._s[0].is_zero()

    def is_polynomial(self) -> bool:
        _, cyc, rest = self._canonical()
        return not cyc and rest.degree() == 0

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        n1, c1, r1 = self._s
        n2, c2, r2 = other._s
        if n1.is_zero():
            return other
        if n2.is_zero():
            return self
        if c1 == c2:
            l1, l2, cyc = n1, n2, c1
        else:
            target = dict(c1)
            for d, e in c2:
                if e > target.get(d, 0):
                    target[d] = e
            l1, l2 = _lift(n1, c1, target), _lift(n2, c2, target)
            cyc = tuple(sorted(target.items()))
        if r1.degree() <= 0 and r2.degree() <= 0:
            return RatFuncQ._make(l1 + l2, cyc)
        if r1 == r2:
            return RatFuncQ._make(l1 + l2, cyc, r1)
        g = r1.gcd(r2)
        a, b = divmod(r2, g)[0], divmod(r1, g)[0]
        return RatFuncQ._make(l1 * a + l2 * b, cyc, r1 * a)

    __radd__ = __add__

    def __neg__(self):
        n, c, r = self._s
        return RatFuncQ._make(-n, c, r, self._reduced)

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
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return ZERO
            n, c, r = self._s
            return RatFuncQ._make(n * to_fmpq(other), c, r, self._reduced)
        other = _coerce(other)
        if other is NotImplemented:
            return other
        n1, c1, r1 = self._s
        n2, c2, r2 = other._s
        if n1.is_zero() or n2.is_zero():
            return ZERO
        rest = r1 if r2.degree() <= 0 else (r2 if r1.degree() <= 0 else r1 * r2)
        return RatFuncQ._make(n1 * n2, _merge_add(c1, c2), rest)

    __rmul__ = __mul__

    def mul_poly(self, p: FPoly) -> RatFuncQ:
        n, c, r = self._s
        return RatFuncQ._make(n * p, c, r)

    def inverse(self) -> RatFuncQ:
        num, cyc, rest = self._canonical()
        if num.is_zero():
            raise NotInvertibleError("zero has no inverse in Q(q)")
        den = rest
        for d, e in cyc:
            den = den * cyclotomic_power(d, e)
        return RatFuncQ(den, num)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- structure -------------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._reduced and other._reduced:
            return _same(self._s, other._s)
        return (self - other).is_zero()

    def __hash__(self):
        num, cyc, rest = self._canonical()
        return hash((str(num), cyc, str(rest)))

    def substitute_power(self, w: int) -> RatFuncQ:
        """q -> q^w.  Reducedness is preserved (gcds survive the substitution)."""
        if w < 1:
            raise ValueError("substitution exponent must be positive")
        if w == 1:
            return self
        num, cyc, rest = self._s
        new_cyc = {}
        for d, e in cyc:
            for d2 in cyclotomic_pullback(d, w):
                new_cyc[d2] = new_cyc.get(d2, 0) + e
        return RatFuncQ._make(
            inflate(num, w), tuple(sorted(new_cyc.items())), inflate(rest, w), self._reduced
        )

    def __call__(self, x):
        """Exact evaluation at a rational point."""
        x = Fraction(x)
        num, cyc, rest = self._s
        den = Fraction(_eval(rest, x))
        for d, e in cyc:
            den *= _eval(cyclotomic(d), x) ** e
        if den == 0:
            raise ZeroDivisionError(f"pole at q = {x}")
        return _eval(num, x) / den

    def render(self) -> str:
        num, cyc, rest = self._canonical()
        top = render_poly(num)
        factors = self.denominator_factors()
        if not factors:
            return top
        if num.length() > 1:
            top = f"({top})"
        den = "*".join(factors)
        if len(factors) > 1:
            den = f"({den})"
        return f"{top}/{den}"

    def denominator_factors(self) -> list[str]:
        _, cyc, rest = self._canonical()
        out = [render_factor(cyclotomic(d)) + (f"^{e}" if e > 1 else "") for d, e in cyc]
        if rest.degree() > 0:
            out.append(render_factor(rest))
        return out

    def __repr__(self):
        return f"RatFuncQ({self.render()!r})"

    __str__ = render


def _eval(p: FPoly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p.coeffs()):
        acc = acc * x + to_fraction(c)
    return acc


def _same(a, b) -> bool:
    return a[1] == b[1] and a[0] == b[0] and a[2] == b[2]


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _as_fpoly(x) -> FPoly:
    if isinstance(x, FPoly):
        return x
    if isinstance(x, PolyQ):
        return x.flint
    if isinstance(x, (int, Fraction)):
        return FPoly([to_fmpq(x)])
    return FPoly([to_fmpq(c) for c in x])


def _coerce(x):
    if isinstance(x, RatFuncQ):
        return x
    if isinstance(x, (int, Fraction)):
        return RatFuncQ.constant(x)
    if isinstance(x, PolyQ):
        return RatFuncQ._make(x.flint, reduced=True)
    if isinstance(x, FPoly):
        return RatFuncQ._make(x, reduced=True)
    return NotImplemented


def as_ratfunc(x) -> RatFuncQ:
    c = _coerce(x)
    if c is NotImplemented:
        raise TypeError(f"cannot interpret {type(x).__name__} as an element of Q(q)")
    return c


def ratfunc_normalize(num, den) -> RatFuncQ:
    """Return the gcd-reduced, monic-denominator representative of num/den."""
    return RatFuncQ(_as_fpoly(num), _as_fpoly(den))


ZERO = RatFuncQ._make(_ZERO, reduced=True)
ONE = RatFuncQ._make(_ONE, reduced=True)
Q = RatFuncQ._make(FPoly([0, 1]), reduced=True)
