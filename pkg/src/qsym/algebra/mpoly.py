"""Sparse multivariate polynomials in x, y, y1, y2, y3 over Q(q)[L]."""

from __future__ import annotations

from fractions import Fraction
from math import comb

from ..config import LIMITS
from ..errors import ExponentCapError, NotInvertibleError
from .logpoly import ONE as LP_ONE
from .logpoly import LogPoly
from .logpoly import _coerce as _as_logpoly
from .logpoly import substitute_power as _lp_substitute_power
from .poly import PolyQ
from .ratfunc import RatFuncQ

VARIABLES = ("x", "y", "y1", "y2", "y3")
_INDEX = {v: i for i, v in enumerate(VARIABLES)}
_NVARS = len(VARIABLES)
_CONST = (0,) * _NVARS


def var_index(name: str) -> int:
    try:
        return _INDEX[name]
    except KeyError:
        raise ValueError(f"unknown variable {name!r}; expected one of {VARIABLES}") from None


def monomial_key(exps: tuple) -> tuple:
    """Graded lexicographic sort key."""
    return (sum(exps), exps)


def _check_degree(exps: tuple) -> None:
    if sum(exps) > LIMITS.max_total_degree:
        raise ExponentCapError(
            f"total degree {sum(exps)} exceeds cap {LIMITS.max_total_degree}"
        )


class MPoly:
    """Immutable sparse polynomial; ``terms`` maps exponent vectors to LogPoly."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != _NVARS or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps}")
            _check_degree(exps)
            c = _as_logpoly(c)
            if c is NotImplemented:
                raise TypeError(f"bad coefficient {c!r}")
            if not c.is_zero():
                clean[exps] = c
        self.terms = clean

    @classmethod
    def _raw(cls, terms: dict) -> MPoly:
        obj = object.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, c) -> MPoly:
        c = _as_logpoly(c)
        return cls._raw({} if c.is_zero() else {_CONST: c})

    @classmethod
    def var(cls, name: str, power: int = 1) -> MPoly:
        exps = [0] * _NVARS
        exps[var_index(name)] = power
        return cls._raw({tuple(exps): LP_ONE})

    @classmethod
    def univariate(cls, name: str, coeffs) -> MPoly:
        """sum_e coeffs[e] * name^e."""
        i = var_index(name)
        terms = {}
        for e, c in enumerate(coeffs):
            if c.is_zero():
                continue
            exps = [0] * _NVARS
            exps[i] = e
            exps = tuple(exps)
            _check_degree(exps)
            terms[exps] = c
        return cls._raw(terms)

    # -- queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _CONST in self.terms)

    def is_unit(self) -> bool:
        return len(self.terms) == 1 and _CONST in self.terms and self.terms[_CONST].is_unit()

    def inverse(self) -> MPoly:
        if not self.is_unit():
            raise NotInvertibleError("only L-free nonzero constants are units")
        return MPoly._raw({_CONST: self.terms[_CONST].inverse()})

    def coefficient(self, exps) -> LogPoly:
        if isinstance(exps, dict):
            vec = [0] * _NVARS
            for name, e in exps.items():
                vec[var_index(name)] = e
            exps = vec
        return self.terms.get(tuple(exps), LogPoly._raw(()))

    def constant_term(self) -> LogPoly:
        return self.coefficient(_CONST)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: monomial_key(kv[0]))

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        _accumulate(out, other.terms)
        return MPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw({e: -c for e, c in self.terms.items()})

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

    def scale(self, c) -> MPoly:
        """Multiply every coefficient by a scalar from Q, Q(q) or Q(q)[L]."""
        if isinstance(c, (int, Fraction)) and c == 0:
            return ZERO
        if isinstance(c, PolyQ):
            c = RatFuncQ._make(c.flint, reduced=True)
        out = {}
        for e, v in self.terms.items():
            t = v * c
            if not t.is_zero():
                out[e] = t
        return MPoly._raw(out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RatFuncQ, LogPoly, PolyQ)):
            return self.scale(other)
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if len(other.terms) == 1 and _CONST in other.terms:
            return self.scale(other.terms[_CONST])
        if len(self.terms) == 1 and _CONST in self.terms:
            return other.scale(self.terms[_CONST])
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t = c1 * c2
                prev = out.get(e)
                out[e] = t if prev is None else prev + t
        for e in list(out):
            _check_degree(e)
            if out[e].is_zero():
                del out[e]
        return MPoly._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / other)
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

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
        return mpoly_equal(self, other)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def substitute_power(self, w: int) -> MPoly:
        """Apply q -> q^w, L -> w*L to every coefficient (variables untouched)."""
        return MPoly._raw({e: _lp_substitute_power(c, w) for e, c in self.terms.items()})

    def substitute_affine(self, name: str, scale, shift) -> MPoly:
        """Replace variable ``name`` by ``scale*name + shift`` (rational scale/shift)."""
        i = var_index(name)
        scale, shift = Fraction(scale), Fraction(shift)
        out = {}
        for exps, c in self.terms.items():
            d = exps[i]
            for j in range(d + 1):
                # C(d, j) scale^j shift^(d-j) name^j
                coef = comb(d, j) * scale ** j * shift ** (d - j)
                if coef == 0:
                    continue
                new = exps[:i] + (j,) + exps[i + 1:]
                t = c * coef
                prev = out.get(new)
                out[new] = t if prev is None else prev + t
        return MPoly._raw({e: c for e, c in out.items() if not c.is_zero()})

    # -- rendering -------------------------------------------------------

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            mono = render_monomial(exps)
            coeff = c.render()
            if not mono:
                parts.append(f"({coeff})")
            elif coeff == "1":
                parts.append(mono)
            else:
                parts.append(f"({coeff})*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"MPoly({self.render()!r})"

    __str__ = render


def render_monomial(exps: tuple) -> str:
    out = []
    for name, e in zip(VARIABLES, exps):
        if e == 1:
            out.append(name)
        elif e > 1:
            out.append(f"{name}^{e}")
    return "*".join(out)


def _accumulate(out: dict, terms: dict) -> None:
    for e, c in terms.items():
        prev = out.get(e)
        if prev is None:
            out[e] = c
        else:
            s = prev + c
            if s.is_zero():
                del out[e]
            else:
                out[e] = s


def _coerce(x):
    if isinstance(x, MPoly):
        return x
    c = _as_logpoly(x)
    if c is NotImplemented:
        return NotImplemented
    return MPoly.constant(c)


def mpoly_equal(a: MPoly, b: MPoly) -> bool:
    """True iff a - b is the zero term map."""
    if a.terms.keys() != b.terms.keys():
        return False
    return all(a.terms[e] == b.terms[e] for e in a.terms)


def first_difference(a: MPoly, b: MPoly):
    """First monomial (graded lex) where a and b differ, or None."""
    keys = sorted(set(a.terms) | set(b.terms), key=monomial_key)
    for e in keys:
        if a.coefficient(e) != b.coefficient(e):
            return e
    return None


class MPolyAccumulator:
    """Mutable sum used while expanding large sums; freeze() yields an MPoly."""

    __slots__ = ("_terms",)

    def __init__(self):
        self._terms = {}

    def add(self, p: MPoly, scale=None) -> None:
        if scale is None:
            _accumulate(self._terms, p.terms)
        else:
            _accumulate(self._terms, {e: c * scale for e, c in p.terms.items()})

    def freeze(self) -> MPoly:
        return MPoly._raw({e: c for e, c in self._terms.items() if not c.is_zero()})


ZERO = MPoly._raw({})
ONE = MPoly._raw({_CONST: LP_ONE})
