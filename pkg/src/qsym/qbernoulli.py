"""q-Bernoulli numbers and polynomials, rebasing, q-power sums, multinomials.

B_{n,q} is the coefficient of t^n/n! in (L + t)/(q e^t - 1), L = log q.
Multiplying through by q e^t - 1 and comparing coefficients gives

    B_0 = L/(q - 1),    (q - 1) B_n = [n = 1] - q * sum_{k<n} C(n, k) B_k.

In base q^w the same recurrence runs with q^w in place of q and w*L in place
of L, which is what :func:`qbernoulli_number` does for ``base=w``.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .algebra.logpoly import L as LOG_Q
from .algebra.logpoly import LogPoly, substitute_power
from .algebra.mpoly import MPoly, var_index
from .algebra.poly import PolyQ, monomial
from .algebra.ratfunc import RatFuncQ
from .errors import DomainError


class QBernoulliCache:
    """Memoized B_0..B_N in the base q^w; extended monotonically under a lock."""

    def __init__(self, base: int = 1):
        if base < 1:
            raise DomainError("base exponent must be >= 1")
        self.base = base
        qw = RatFuncQ._make(monomial(base), reduced=True)
        self._qw = qw
        self._inv = (qw - 1).inverse()
        self._values: tuple[LogPoly, ...] = (LOG_Q * base * self._inv,)
        self._lock = threading.Lock()

    def __len__(self):
        return len(self._values)

    def get(self, n: int) -> LogPoly:
        values = self._values
        if n < len(values):
            return values[n]
        with self._lock:
            values = list(self._values)
            while len(values) <= n:
                m = len(values)
                acc = LogPoly._raw(())
                for k, b in enumerate(values):
                    acc = acc + b * comb(m, k)
                acc = -(acc * self._qw)
                if m == 1:
                    acc = acc + 1
                values.append(acc * self._inv)
            # publish the extended tuple in one assignment
            self._values = tuple(values)
        return self._values[n]


_CACHES: dict[int, QBernoulliCache] = {}
_CACHES_LOCK = threading.Lock()


def _cache(base: int) -> QBernoulliCache:
    c = _CACHES.get(base)
    if c is None:
        with _CACHES_LOCK:
            c = _CACHES.setdefault(base, QBernoulliCache(base))
    return c


def qbernoulli_number(n: int, base: int = 1) -> LogPoly:
    """B_{n, q^base} in Q(q)[L]."""
    if n < 0:
        raise DomainError("n must be >= 0")
    return _cache(base).get(n)


def qbernoulli_poly(n: int, var: str = "x", base: int = 1) -> MPoly:
    """B_{n, q^base}(var) = sum_k C(n, k) B_{k, q^base} var^(n-k)."""
    if n < 0:
        raise DomainError("n must be >= 0")
    var_index(var)
    coeffs = [qbernoulli_number(n - e, base) * comb(n, e) for e in range(n + 1)]
    return MPoly.univariate(var, coeffs)


@lru_cache(maxsize=None)
def qbernoulli_affine(n: int, base: int, var: str, scale: Fraction, shift: Fraction) -> MPoly:
    """B_{n, q^base}(scale*var + shift), expanded in var.

    Coefficient of var^s is sum_j C(n, j) B_j C(n-j, s) scale^s shift^(n-j-s).
    """
    out = []
    for s in range(n + 1):
        acc = LogPoly._raw(())
        for j in range(n - s + 1):
            c = comb(n, j) * comb(n - j, s) * shift ** (n - j - s)
            if c:
                acc = acc + qbernoulli_number(j, base) * c
        out.append(acc * scale**s if scale != 1 else acc)
    if scale == 0:
        return MPoly.constant(out[0])
    return MPoly.univariate(var, out)


def rebase(a, w: int):
    """q -> q^w, L -> w L on a LogPoly or on every coefficient of an MPoly."""
    if w < 1:
        raise DomainError("rebase needs w >= 1")
    if isinstance(a, MPoly):
        return a.substitute_power(w)
    if isinstance(a, LogPoly):
        return substitute_power(a, w)
    raise TypeError(f"cannot rebase {type(a).__name__}")


@lru_cache(maxsize=None)
def power_sum(k: int, n: int) -> PolyQ:
    """S_{k,q}(n) = sum_{i=0}^{n} i^k q^i with 0^0 = 1."""
    if k < 0 or n < 0:
        raise DomainError("power_sum needs k, n >= 0")
    return PolyQ([i**k for i in range(n + 1)])


def multinomial(n: int, *parts: int) -> int:
    """n! / (k! l! m! ...) for parts summing to n."""
    if any(p < 0 for p in parts) or sum(parts) != n:
        raise DomainError(f"parts {parts} do not sum to {n}")
    out = factorial(n)
    for p in parts:
        out //= factorial(p)
    return out


@lru_cache(maxsize=None)
def _classical_table(n: int) -> tuple[Fraction, ...]:
    values = [Fraction(1)]
    for m in range(1, n + 1):
        s = sum(comb(m + 1, k) * values[k] for k in range(m))
        values.append(-s / (m + 1))
    return tuple(values)


def classical_bernoulli(n: int) -> Fraction:
    """Classical B_n with B_1 = -1/2, from sum_{k<=n} C(n+1, k) B_k = 0."""
    if n < 0:
        raise DomainError("n must be >= 0")
    return _classical_table(n)[n]
