"""Fixed-precision p-adic numbers, the p-adic logarithm, and finite Volkenborn
sums used as witnesses for the q-Bernoulli moments.

A :class:`PadicNum` is p^v * u known modulo p^(v+M): ``v`` is the valuation,
``u`` a unit residue modulo p^M and ``M`` the relative precision.  A value
with no significant digits is a zero known to absolute precision ``v``
(``u = 0, M = 0``); an exact zero has ``v = None``.  Every operation returns
the largest absolute precision the operands justify and never more.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import DomainError, NotInvertibleError
from .qbernoulli import qbernoulli_number
from .report import FAIL, PASS, Clock, VerificationReport


def valuation(x, p: int) -> int | None:
    """v_p of a nonzero integer or rational; None for zero."""
    x = Fraction(x)
    if x == 0:
        return None
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class PadicNum:
    __slots__ = ("p", "v", "u", "M")

    def __init__(self, p: int, v: int | None, u: int, M: int):
        self.p, self.v, self.u, self.M = p, v, u, M

    # -- construction ----------------------------------------------------

    @classmethod
    def exact_zero(cls, p: int) -> PadicNum:
        return cls(p, None, 0, 0)

    @classmethod
    def zero(cls, p: int, absprec: int) -> PadicNum:
        """O(p^absprec)."""
        return cls(p, absprec, 0, 0)

    @classmethod
    def from_rational(cls, x, p: int, absprec: int) -> PadicNum:
        """x modulo p^absprec; x must have denominator prime to p after removing p-powers."""
        x = Fraction(x)
        v = valuation(x, p)
        if v is None:
            return cls.exact_zero(p)
        rel = absprec - v
        if rel <= 0:
            return cls.zero(p, absprec)
        unit = x / Fraction(p) ** v
        mod = p**rel
        return cls(p, v, unit.numerator * pow(unit.denominator, -1, mod) % mod, rel)

    # -- properties ------------------------------------------------------

    @property
    def is_exact_zero(self) -> bool:
        return self.v is None

    @property
    def absprec(self) -> float | int:
        if self.v is None:
            return float("inf")
        return self.v + self.M

    def is_zero(self) -> bool:
        """True when no significant digit is known (exact or O(p^k) zero)."""
        return self.v is None or self.M == 0

    def valuation(self) -> int | float:
        """Valuation, or the absolute precision for a zero known only to O(p^k)."""
        if self.v is None:
            return float("inf")
        return self.v

    def residue(self) -> int:
        """Integer representative in [0, p^absprec) of a p-integral value."""
        if self.v is None:
            raise DomainError("an exact zero has no finite residue modulus")
        if self.v < 0:
            raise DomainError("value is not p-integral")
        mod = self.p ** self.absprec
        return (self.u * self.p**self.v) % mod

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other, relprec: int | None = None) -> PadicNum:
        if isinstance(other, PadicNum):
            if other.p != self.p:
                raise DomainError(f"mixing primes {self.p} and {other.p}")
            return other
        if isinstance(other, (int, Fraction)):
            v = valuation(other, self.p)
            if v is None:
                return PadicNum.exact_zero(self.p)
            if self.v is None:
                raise DomainError("cannot infer a precision for a rational next to an exact zero")
            # enough digits that the other operand, not the conversion, limits precision
            rel = relprec if relprec is not None else max(self.absprec - v, 1)
            return PadicNum.from_rational(other, self.p, v + max(rel, 1))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.v is None:
            return other
        if other.v is None:
            return self
        absprec = min(self.absprec, other.absprec)
        m = min(self.v, other.v)
        p = self.p
        x = self.u * p ** (self.v - m) + other.u * p ** (other.v - m)
        return _normalize(p, x, m, absprec)

    __radd__ = __add__

    def __neg__(self):
        if self.v is None or self.M == 0:
            return self
        return PadicNum(self.p, self.v, (-self.u) % self.p**self.M, self.M)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other, relprec=self.M if self.v is not None else None)
        if other is NotImplemented:
            return other
        if self.v is None or other.v is None:
            return PadicNum.exact_zero(self.p)
        v = self.v + other.v
        if self.M == 0 or other.M == 0:
            # a zero known to O(p^a) times b is known to O(p^(a + v(b)))
            return PadicNum.zero(self.p, min(self.absprec + other.v, other.absprec + self.v))
        M = min(self.M, other.M)
        return PadicNum(self.p, v, (self.u * other.u) % self.p**M, M)

    __rmul__ = __mul__

    def inverse(self) -> PadicNum:
        if self.is_zero():
            raise NotInvertibleError("p-adic zero has no inverse")
        mod = self.p**self.M
        return PadicNum(self.p, -self.v, pow(self.u, -1, mod), self.M)

    def __truediv__(self, other):
        other = self._coerce(other, relprec=self.M if self.v is not None else None)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if self.v is None:
            return PadicNum.exact_zero(self.p) if e else PadicNum.from_rational(1, self.p, 1)
        if self.M == 0:
            if e == 0:
                raise DomainError("0^0 of an inexact zero")
            return PadicNum.zero(self.p, self.absprec + (e - 1) * self.v)
        return PadicNum(self.p, self.v * e, pow(self.u, e, self.p**self.M), self.M)

    def agreement(self, other) -> int | float:
        """Valuation of self - other (their difference's absolute precision when it vanishes)."""
        return (self - other).valuation()

    def __eq__(self, other):
        """Equality at the common precision."""
        if not isinstance(other, (PadicNum, int, Fraction)):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        if self.v is None:
            return f"PadicNum(p={self.p}, 0)"
        if self.M == 0:
            return f"PadicNum(p={self.p}, O({self.p}^{self.v}))"
        return f"PadicNum(p={self.p}, {self.p}^{self.v}*{self.u} + O({self.p}^{self.absprec}))"


def _normalize(p: int, x: int, shift: int, absprec: int) -> PadicNum:
    """p^shift * x for an integer x, known modulo p^absprec."""
    rel = absprec - shift
    if rel <= 0:
        return PadicNum.zero(p, absprec)
    x %= p**rel
    if x == 0:
        return PadicNum.zero(p, absprec)
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    M = rel - v
    return PadicNum(p, shift + v, x % p**M, M)



def padic_log(a: PadicNum) -> PadicNum:
    """log(a) = sum_{k>=1} (-1)^(k+1) (a-1)^k / k for a = 1 mod p, p odd.

    Terms are added until their valuation k*s - v_p(k) (s = v(a-1)) reaches
    the precision of a; that bound increases with k for odd p, so the tail
    is O(p^absprec(a)).
    """
    p = a.p
    if not _is_odd_prime(p):
        raise DomainError(f"p must be an odd prime, got {p}")
    if a.is_zero() or a.v != 0:
        raise DomainError("log needs a p-adic unit congruent to 1 mod p")
    x = a - 1
    if x.is_exact_zero:
        return PadicNum.exact_zero(p)
    target = a.absprec
    s = x.valuation()
    if s < 1:
        raise DomainError("log needs a = 1 (mod p)")
    if x.is_zero():
        return PadicNum.zero(p, target)
    acc = PadicNum.zero(p, target)
    power = x
    k = 1
    while k * s - _log_floor(k, p) < target:
        term = power / k
        acc = acc + term if k % 2 else acc - term
        power = power * x
        k += 1
    return acc


def _log_floor(k: int, p: int) -> int:
    e = 0
    while k >= p:
        k //= p
        e += 1
    return e


@dataclass(frozen=True)
class VolkenbornParams:
    """Prime p, cutoff exponent N (sums over j < p^N), target precision M and base q."""

    p: int
    q: Fraction
    N: int
    M: int

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q))
        if not _is_odd_prime(self.p):
            raise DomainError(f"p must be an odd prime, got {self.p}")
        if self.q == 1:
            raise DomainError("q = 1 is excluded")
        if self.q.denominator % self.p == 0:
            raise DomainError(f"denominator of q = {self.q} is divisible by p = {self.p}")
        if (self.q.numerator - self.q.denominator) % self.p:
            raise DomainError(f"q = {self.q} is not congruent to 1 mod {self.p}")
        if self.N < 1 or self.M < 1:
            raise DomainError("N and M must be >= 1")

    def with_N(self, N: int) -> VolkenbornParams:
        return VolkenbornParams(self.p, self.q, N, self.M)


def volkenborn_sum(coeffs, params: VolkenbornParams) -> PadicNum:
    """p^-N sum_{j<p^N} q^j g(j) for the integer polynomial g = sum coeffs[e] z^e.

    The sum is formed modulo p^(M+N); dividing by p^N leaves M digits of
    absolute precision.
    """
    p, N, M = params.p, params.N, params.M
    mod = p ** (M + N)
    qm = params.q.numerator * pow(params.q.denominator, -1, mod) % mod
    total = 0
    qj = 1
    for j in range(p**N):
        g = 0
        for c in reversed(coeffs):
            g = (g * j + c) % mod
        total = (total + g * qj) % mod
        qj = qj * qm % mod
    return _normalize(p, total, -N, M)


def volkenborn_moment(n: int, params: VolkenbornParams) -> PadicNum:
    """Finite Volkenborn sum of q^z z^n."""
    if n < 0:
        raise DomainError("n must be >= 0")
    return volkenborn_sum([0] * n + [1], params)


def bernoulli_value(n: int, params: VolkenbornParams) -> PadicNum:
    """B_{n,q} at the rational q with L = log_p(q), to absolute precision >= M."""
    p, q = params.p, params.q
    b = qbernoulli_number(n)
    parts = [b.coeff(j)(q) for j in range(b.degree() + 1)]
    # room for the poles at q = 1 and for the valuation of log q
    extra = max(0, -min((valuation(c, p) for c in parts if c), default=0))
    work = params.M + extra + 1
    log_q = padic_log(PadicNum.from_rational(q, p, work))
    acc = PadicNum.zero(p, work)
    for c in reversed(parts):
        acc = acc * log_q + PadicNum.from_rational(c, p, work + extra)
    return acc


def moment_offset(n: int, p: int) -> int:
    """Offset c in the expected agreement v(V_N - B_n) >= N - c.

    A fixed allowance, not a proven bound: one digit for the 1/(q-1) pole
    of the moments plus n/(p-1) for the factorials of the Taylor terms of
    q^z z^n.  It is recorded in every report.
    """
    return 1 + n // (p - 1)


def moment_check(n: int, params: VolkenbornParams, N_list) -> VerificationReport:
    """v_p(V_N - B_{n,q}) for each N: nondecreasing, reaching min(M, N_max - c) and
    at least 3 significant digits."""
    N_list = sorted(set(int(N) for N in N_list))
    if not N_list or N_list[0] < 1:
        raise DomainError("N_list must hold cutoffs >= 1")
    with Clock() as clock:
        exact = bernoulli_value(n, params)
        vals = []
        for N in N_list:
            approx = volkenborn_moment(n, params.with_N(N))
            diff = approx - exact
            vals.append(_capped(diff))
        c = moment_offset(n, params.p)
        final = vals[-1]
        need = min(params.M, N_list[-1] - c)
        digits = final - exact.valuation()
        monotone = all(a <= b for a, b in zip(vals, vals[1:]))
        ok = monotone and final >= need and digits >= 3
    params_out = {"n": n, "p": params.p, "q": str(params.q), "M": params.M, "N": N_list}
    detail = {
        "valuations": vals,
        "offset": c,
        "required": need,
        "significant_digits": digits,
        "b_valuation": exact.valuation(),
        "b_precision": exact.absprec,
        "monotone": monotone,
    }
    return VerificationReport("padic", "moment", params_out, PASS if ok else FAIL, detail, [], clock.millis)


def _capped(x: PadicNum) -> int:
    """Valuation of a difference, with an unresolved zero reported at its precision."""
    return int(x.valuation())


def shift_identity_check(n: int, params: VolkenbornParams) -> VerificationReport:
    """V_N(f(z+1)) - V_N(f(z)) against f'(0) = [n=0] log q + [n=1], f = q^z z^n.

    The shifted sum is formed on its own from q^(j+1) (j+1)^n, not by
    telescoping, and must agree to min(M, N) digits.
    """
    p = params.p
    with Clock() as clock:
        base = volkenborn_sum([comb(n, e) for e in range(n + 1)], params)
        left = base * params.q - volkenborn_moment(n, params)
        target = PadicNum.zero(p, params.M)
        if n == 0:
            target = padic_log(PadicNum.from_rational(params.q, p, params.M + 1))
        elif n == 1:
            target = PadicNum.from_rational(1, p, params.M)
        got = _capped(left - target)
        need = min(params.M, params.N)
        ok = got >= need
    params_out = {"n": n, "p": p, "q": str(params.q), "M": params.M, "N": params.N}
    detail = {"valuation": got, "required": need}
    return VerificationReport("padic", "shift", params_out, PASS if ok else FAIL, detail, [], clock.millis)
