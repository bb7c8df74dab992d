"""The identity catalog: theorem families, specializations, the w1/w2 chain,
series expansions of the integral quotients and the auxiliary equalities.

Every expression is transcribed in the form it is printed, including the
known misprints; the verifier reports those instead of silently fixing them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .expr import Expr, parse


@dataclass(frozen=True)
class Family:
    """A symmetric expression in (w1, w2, w3) and its printed rewritings."""

    id: str
    title: str
    expected_images: int
    printed: tuple[Expr, ...]

    @property
    def canonical(self) -> Expr:
        return self.printed[0]


@dataclass(frozen=True)
class Corollary:
    """Printed identities obtained from a family by fixing slots to 1."""

    id: str
    parent: str
    fixed: tuple[int, ...]  # slots (0-based) set to 1
    printed: tuple[Expr, ...]
    scale: Expr | None = None  # factor applied to the parent before comparing

    @property
    def free_slots(self) -> tuple[int, ...]:
        return tuple(s for s in range(3) if s not in self.fixed)


@dataclass(frozen=True)
class Expansion:
    """t^n/n! coefficient of a closed form, as printed, with its quotient type."""

    id: str
    family: str  # "L23" | "L12"
    index: int
    expr: Expr
    notes: tuple[str, ...] = field(default=())


@dataclass(frozen=True)
class Auxiliary:
    """An alternative expression claimed equal to a member of a family."""

    id: str
    expr: Expr
    target: Expr
    reason: str


def _exprs(*texts: str) -> tuple[Expr, ...]:
    return tuple(parse(t) for t in texts)


_COMP = "sum[k+l+m=n] C(n;k,l,m)"
_RANGE = "sum[k=0..n] C(n,k)"

FAMILIES: dict[str, Family] = {}


def _family(id, title, expected, *texts):
    FAMILIES[id] = Family(id, title, expected, _exprs(*texts))


_family(
    "F1",
    "three B-polynomials in y1, y2, y3",
    6,
    f"{_COMP} B[k|w2w3](w1*y1) B[l|w1w3](w2*y2) B[m|w1w2](w3*y3) w1^(l+m) w2^(k+m) w3^(k+l)",
    f"{_COMP} B[k|w2w3](w1*y1) B[l|w1w2](w3*y2) B[m|w1w3](w2*y3) w1^(l+m) w3^(k+m) w2^(k+l)",
    f"{_COMP} B[k|w1w3](w2*y1) B[l|w2w3](w1*y2) B[m|w1w2](w3*y3) w2^(l+m) w1^(k+m) w3^(k+l)",
    f"{_COMP} B[k|w1w3](w2*y1) B[l|w1w2](w3*y2) B[m|w2w3](w1*y3) w2^(l+m) w3^(k+m) w1^(k+l)",
    f"{_COMP} B[k|w1w2](w3*y1) B[l|w2w3](w1*y2) B[m|w1w3](w2*y3) w3^(l+m) w1^(k+m) w2^(k+l)",
    f"{_COMP} B[k|w1w2](w3*y1) B[l|w1w3](w2*y2) B[m|w2w3](w1*y3) w3^(l+m) w2^(k+m) w1^(k+l)",
)

_family(
    "F2",
    "two B-polynomials and one power sum",
    6,
    f"{_COMP} B[k|w2w3](w1*y1) B[l|w1w3](w2*y2) S[m|w1w2](w3-1) w1^(l+m) w2^(k+m) w3^(k+l-1)",
    f"{_COMP} B[k|w2w3](w1*y1) B[l|w1w2](w3*y2) S[m|w1w3](w2-1) w1^(l+m) w3^(k+m) w2^(k+l-1)",
    f"{_COMP} B[k|w1w3](w2*y1) B[l|w2w3](w1*y2) S[m|w1w2](w3-1) w2^(l+m) w1^(k+m) w3^(k+l-1)",
    f"{_COMP} B[k|w1w3](w2*y1) B[l|w1w2](w3*y2) S[m|w2w3](w1-1) w2^(l+m) w3^(k+m) w1^(k+l-1)",
    f"{_COMP} B[k|w1w2](w3*y1) B[l|w1w3](w2*y2) S[m|w2w3](w1-1) w3^(l+m) w2^(k+m) w1^(k+l-1)",
    f"{_COMP} B[k|w1w2](w3*y1) B[l|w2w3](w1*y2) S[m|w1w3](w2-1) w3^(l+m) w1^(k+m) w2^(k+l-1)",
)

_family(
    "F3",
    "two B-polynomials, one with a residue-shifted argument",
    6,
    f"w1^(n-1) {_RANGE} B[k|w1w2](w3*y1) w3^(n-k) w2^(k) sum[i<w1] q^(w2w3*i) B[n-k|w1w3](w2*y2 + w2/w1*i)",
    f"w1^(n-1) {_RANGE} B[k|w1w3](w2*y1) w2^(n-k) w3^(k) sum[i<w1] q^(w2w3*i) B[n-k|w1w2](w3*y2 + w3/w1*i)",
    f"w2^(n-1) {_RANGE} B[k|w1w2](w3*y1) w3^(n-k) w1^(k) sum[i<w2] q^(w1w3*i) B[n-k|w2w3](w1*y2 + w1/w2*i)",
    f"w2^(n-1) {_RANGE} B[k|w2w3](w1*y1) w1^(n-k) w3^(k) sum[i<w2] q^(w1w3*i) B[n-k|w1w2](w3*y2 + w3/w2*i)",
    f"w3^(n-1) {_RANGE} B[k|w1w3](w2*y1) w2^(n-k) w1^(k) sum[i<w3] q^(w1w2*i) B[n-k|w2w3](w1*y2 + w1/w3*i)",
    f"w3^(n-1) {_RANGE} B[k|w2w3](w1*y1) w1^(n-k) w2^(k) sum[i<w3] q^(w1w2*i) B[n-k|w1w3](w2*y2 + w2/w3*i)",
)

_family(
    "F4",
    "one B-polynomial and two power sums",
    3,
    f"{_COMP} B[k|w2w3](w1*y1) S[l|w1w3](w2-1) S[m|w1w2](w3-1) w1^(l+m) w2^(k+m-1) w3^(k+l-1)",
    f"{_COMP} B[k|w1w3](w2*y1) S[l|w1w2](w3-1) S[m|w2w3](w1-1) w2^(l+m) w3^(k+m-1) w1^(k+l-1)",
    f"{_COMP} B[k|w1w2](w3*y1) S[l|w2w3](w1-1) S[m|w1w3](w2-1) w3^(l+m) w1^(k+m-1) w2^(k+l-1)",
)

_family(
    "F5",
    "power sum times a residue sum of B-polynomials",
    6,
    f"w1^(n-1) {_RANGE} S[n-k|w1w2](w3-1) w2^(n-k) w3^(k-1) sum[i<w1] q^(w2w3*i) B[k|w1w3](w2*y1 + w2/w1*i)",
    f"w1^(n-1) {_RANGE} S[n-k|w1w3](w2-1) w3^(n-k) w2^(k-1) sum[i<w1] q^(w2w3*i) B[k|w1w2](w3*y1 + w3/w1*i)",
    f"w2^(n-1) {_RANGE} S[n-k|w1w2](w3-1) w1^(n-k) w3^(k-1) sum[i<w2] q^(w1w3*i) B[k|w2w3](w1*y1 + w1/w2*i)",
    # printed with w3/w1 in the shift; the slot action on the first line gives w3/w2
    f"w2^(n-1) {_RANGE} S[n-k|w2w3](w1-1) w3^(n-k) w1^(k-1) sum[i<w2] q^(w1w3*i) B[k|w1w2](w3*y1 + w3/w1*i)",
    f"w3^(n-1) {_RANGE} S[n-k|w1w3](w2-1) w1^(n-k) w2^(k-1) sum[i<w3] q^(w1w2*i) B[k|w2w3](w1*y1 + w1/w3*i)",
    f"w3^(n-1) {_RANGE} S[n-k|w2w3](w1-1) w2^(n-k) w1^(k-1) sum[i<w3] q^(w1w2*i) B[k|w1w3](w2*y1 + w2/w3*i)",
)

_family(
    "F6",
    "double residue sum of one B-polynomial",
    3,
    "(w1w2)^(n-1) sum[i<w1, j<w2] q^(w2w3*i + w1w3*j) B[n|w1w2](w3*y1 + w3/w1*i + w3/w2*j)",
    "(w2w3)^(n-1) sum[i<w2, j<w3] q^(w1w3*i + w1w2*j) B[n|w2w3](w1*y1 + w1/w2*i + w1/w3*j)",
    "(w3w1)^(n-1) sum[i<w3, j<w1] q^(w1w2*i + w2w3*j) B[n|w1w3](w2*y1 + w2/w3*i + w2/w1*j)",
)

_family(
    "F7",
    "three B-polynomials in a single y, cyclic bases",
    2,
    f"{_COMP} B[k|w3](w1*y) B[l|w1](w2*y) B[m|w2](w3*y) w3^(k) w1^(l) w2^(m)",
    f"{_COMP} B[k|w2](w1*y) B[l|w1](w3*y) B[m|w3](w2*y) w2^(k) w1^(l) w3^(m)",
)

_family(
    "F8",
    "three power sums, cyclic bases",
    2,
    f"{_COMP} S[k|w3](w1-1) S[l|w1](w2-1) S[m|w2](w3-1) w3^(k-1) w1^(l-1) w2^(m-1)",
    f"{_COMP} S[k|w2](w1-1) S[l|w1](w3-1) S[m|w3](w2-1) w2^(k-1) w1^(l-1) w3^(m-1)",
)


COROLLARIES: dict[str, Corollary] = {}


def _corollary(id, parent, fixed, *texts, scale=None):
    COROLLARIES[id] = Corollary(id, parent, fixed, _exprs(*texts), parse(scale) if scale else None)


_W3 = (2,)
_W23 = (1, 2)

_corollary(
    "F2-w3",
    "F2",
    _W3,
    f"{_RANGE} B[k|w2](w1*y1) B[n-k|w1](w2*y2) w1^(n-k) w2^(k)",
    f"{_RANGE} B[k|w1](w2*y1) B[n-k|w2](w1*y2) w2^(n-k) w1^(k)",
    f"{_COMP} B[k|w1w2](y1) B[l|w1](w2*y2) S[m|w2](w1-1) w2^(k+m) w1^(k+l-1)",
    f"{_COMP} B[k|w1](w2*y1) B[l|w1w2](y2) S[m|w2](w1-1) w2^(l+m) w1^(k+l-1)",
    f"{_COMP} B[k|w1w2](y1) B[l|w2](w1*y2) S[m|w1](w2-1) w1^(k+m) w2^(k+l-1)",
    f"{_COMP} B[k|w2](w1*y1) B[l|w1w2](y2) S[m|w1](w2-1) w1^(l+m) w2^(k+l-1)",
)
_corollary(
    "F2-w23",
    "F2",
    _W23,
    f"{_RANGE} B[k|1](w1*y1) B[n-k|w1](y2) w1^(n-k)",
    f"{_RANGE} B[k|w1](y1) B[n-k|1](w1*y2) w1^(k)",
    f"{_COMP} B[k|w1](y1) B[l|w1](y2) S[m|1](w1-1) w1^(k+l-1)",
)
_corollary(
    "F3-w3",
    "F3",
    _W3,
    f"{_RANGE} B[k|w2](w1*y1) B[n-k|w1](w2*y2) w1^(n-k) w2^(k)",
    f"{_RANGE} B[k|w1](w2*y1) B[n-k|w2](w1*y2) w2^(n-k) w1^(k)",
    f"w1^(n-1) {_RANGE} B[k|w1w2](y1) w2^(k) sum[i<w1] q^(w2*i) B[n-k|w1](w2*y2 + w2/w1*i)",
    f"w1^(n-1) {_RANGE} B[k|w1](w2*y1) w2^(n-k) sum[i<w1] q^(w2*i) B[n-k|w1w2](y2 + i/w1)",
    f"w2^(n-1) {_RANGE} B[k|w1w2](y1) w1^(k) sum[i<w2] q^(w1*i) B[n-k|w2](w1*y2 + w1/w2*i)",
    f"w2^(n-1) {_RANGE} B[k|w2](w1*y1) w1^(n-k) sum[i<w2] q^(w1*i) B[n-k|w1w2](y2 + i/w2)",
)
_corollary(
    "F3-w23",
    "F3",
    _W23,
    f"{_RANGE} B[k|w1](y1) B[n-k|1](w1*y2) w1^(k)",
    # y1 and y2 trade places relative to the line above, as printed
    f"{_RANGE} B[k|w1](y2) B[n-k|1](w1*y1) w1^(k)",
    f"w1^(n-1) {_RANGE} B[k|w1](y1) sum[i<w1] q^(i) B[n-k|w1](y2 + i/w1)",
)
_corollary(
    "F4-w3",
    "F4",
    _W3,
    f"{_RANGE} B[k|w2](w1*y1) S[n-k|w1](w2-1) w1^(n-k) w2^(k-1)",
    f"{_RANGE} B[k|w1](w2*y1) S[n-k|w2](w1-1) w2^(n-k) w1^(k-1)",
    f"{_COMP} B[k|w1w2](y1) S[l|w2](w1-1) S[m|w1](w2-1) w1^(k+m-1) w2^(k+l-1)",
)
_corollary(
    "F4-w23",
    "F4",
    _W23,
    "B[n|1](w1*y1)",
    f"{_RANGE} B[k|w1](y1) S[n-k|1](w1-1) w1^(k-1)",
)
_corollary(
    "F5-w3",
    "F5",
    _W3,
    "w1^(n-1) sum[i<w1] q^(w2*i) B[n|w1](w2*y1 + w2/w1*i)",
    "w2^(n-1) sum[i<w2] q^(w1*i) B[n|w2](w1*y1 + w1/w2*i)",
    f"{_RANGE} B[k|w1](w2*y1) S[n-k|w2](w1-1) w2^(n-k) w1^(k-1)",
    f"{_RANGE} B[k|w2](w1*y1) S[n-k|w1](w2-1) w1^(n-k) w2^(k-1)",
    f"w1^(n-1) {_RANGE} S[n-k|w1](w2-1) w2^(k-1) sum[i<w1] q^(w2*i) B[k|w1w2](y1 + i/w1)",
    f"w2^(n-1) {_RANGE} S[n-k|w2](w1-1) w1^(k-1) sum[i<w2] q^(w1*i) B[k|w1w2](y1 + i/w2)",
)
_corollary(
    "F5-w23",
    "F5",
    _W23,
    "B[n|1](w1*y1)",
    "w1^(n-1) sum[i<w1] q^(i) B[n|w1](y1 + i/w1)",
    f"{_RANGE} B[k|w1](y1) S[n-k|1](w1-1) w1^(k-1)",
)
_corollary(
    "F6-w3",
    "F6",
    _W3,
    "w1^(n-1) sum[j<w1] q^(w2*j) B[n|w1](w2*y1 + w2/w1*j)",
    "w2^(n-1) sum[i<w2] q^(w1*i) B[n|w2](w1*y1 + w1/w2*i)",
    "(w1w2)^(n-1) sum[i<w1, j<w2] q^(w2*i + w1*j) B[n|w1w2](y1 + i/w1 + j/w2)",
)
_corollary(
    "F8-w3",
    "F8",
    _W3,
    f"{_RANGE} S[k|w1](w2-1) S[n-k|1](w1-1) w1^(k)",
    f"{_RANGE} S[k|w2](w1-1) S[n-k|1](w2-1) w2^(k)",
    scale="(w1w2)^(1)",
)


# The chain of equal expressions in w1, w2 assembled from the w3 = 1 corollaries.
CHAIN: tuple[Expr, ...] = _exprs(
    f"{_RANGE} B[k|w2](w1*y1) S[n-k|w1](w2-1) w1^(n-k) w2^(k-1)",
    f"{_RANGE} B[k|w1](w2*y1) S[n-k|w2](w1-1) w2^(n-k) w1^(k-1)",
    "w1^(n-1) sum[i<w1] q^(w2*i) B[n|w1](w2*y1 + w2/w1*i)",
    "w2^(n-1) sum[i<w2] q^(w1*i) B[n|w2](w1*y1 + w1/w2*i)",
    f"{_COMP} B[k|w1w2](y1) S[l|w2](w1-1) S[m|w1](w2-1) w1^(k+m-1) w2^(k+l-1)",
    f"w1^(n-1) {_RANGE} S[n-k|w1](w2-1) w2^(k-1) sum[i<w1] q^(w2*i) B[k|w1w2](y1 + i/w1)",
    f"w2^(n-1) {_RANGE} S[n-k|w2](w1-1) w1^(k-1) sum[i<w2] q^(w1*i) B[k|w1w2](y1 + i/w2)",
    "(w1w2)^(n-1) sum[i<w1, j<w2] q^(w2*i + w1*j) B[n|w1w2](y1 + i/w1 + j/w2)",
)


EXPANSIONS: dict[str, Expansion] = {}


def _expansion(id, family, index, text, notes=()):
    EXPANSIONS[id] = Expansion(id, family, index, parse(text), tuple(notes))


_expansion(
    "L23.0",
    "L23",
    0,
    f"{_COMP} B[k|w2w3](w1*y1) B[l|w1w3](w2*y2) B[m|w1w2](w3*y3) w1^(l+m) w2^(k+m) w3^(k+l)",
)
_expansion(
    "L23.1a",
    "L23",
    1,
    f"{_COMP} B[k|w2w3](w1*y1) B[l|w1w3](w2*y2) S[m|w1w2](w3-1) w1^(l+m) w2^(k+m) w3^(k+l-1)",
)
_expansion(
    "L23.1b",
    "L23",
    1,
    f"w3^(n-1) {_RANGE} B[k|w2w3](w1*y1) w1^(n-k) w2^(k) sum[i<w3] q^(w1w2*i) B[n-k|w1w3](w2*y2 + w2/w3*i)",
)
_expansion(
    "L23.2a",
    "L23",
    2,
    f"{_COMP} B[k|w2w3](w1*y1) S[l|w1w3](w2-1) S[m|w1w2](w3-1) w1^(l+m) w2^(k+m-1) w3^(k+l-1)",
)
_expansion(
    "L23.2b",
    "L23",
    2,
    f"w2^(n-1) {_RANGE} S[n-k|w1w2](w3-1) w1^(n-k) w3^(k-1) sum[i<w2] q^(w1w3*i) B[k|w2w3](w1*y1 + w1/w2*i)",
)
_expansion(
    "L23.2c",
    "L23",
    2,
    "(w2w3)^(n-1) sum[i<w2, j<w3] q^(w1w3*i + w1w2*j) B[n|w2w3](w1*y1 + w1/w2*i + w1/w3*j)",
)
_expansion(
    "L23.3",
    "L23",
    3,
    f"{_COMP} S[k|w2w3](w1-1) S[l|w1w3](w2-1) S[m|w1w2](w3-1) w1^(l+m-1) w2^(k+m-1) w3^(k+l-1)",
)
_expansion(
    "L12.0",
    "L12",
    0,
    f"{_COMP} B[k|w1](w2*y) B[l|w2](w3*y) B[m|w3](w1*y) w1^(k) w2^(l) w3^(m)",
    notes=(
        "intermediate product: the first factor's sum is printed over n while its "
        "summand is indexed by k; read as a sum over k (the final coefficient form is unaffected)",
    ),
)
_expansion(
    "L12.1",
    "L12",
    1,
    f"{_COMP} S[k|w1](w2-1) S[l|w2](w3-1) S[m|w3](w1-1) w1^(k-1) w2^(l-1) w3^(m-1)",
)


def _aux(id, text, target, reason):
    return Auxiliary(id, parse(text), target, reason)


_F4 = FAMILIES["F4"].printed
_F8 = FAMILIES["F8"].printed
_L_M = "interchange l and m"
_CYC1 = "rename k->l, l->m, m->k"
_CYC2 = "rename k->m, l->k, m->l"

AUXILIARY: tuple[Auxiliary, ...] = (
    _aux(
        "F4.aux1",
        f"{_COMP} B[k|w2w3](w1*y1) S[l|w1w2](w3-1) S[m|w1w3](w2-1) w1^(l+m) w3^(k+m-1) w2^(k+l-1)",
        _F4[0],
        _L_M,
    ),
    _aux(
        "F4.aux2",
        f"{_COMP} B[k|w1w3](w2*y1) S[l|w2w3](w1-1) S[m|w1w2](w3-1) w2^(l+m) w1^(k+m-1) w3^(k+l-1)",
        _F4[1],
        _L_M,
    ),
    _aux(
        "F4.aux3",
        f"{_COMP} B[k|w1w2](w3*y1) S[l|w1w3](w2-1) S[m|w2w3](w1-1) w3^(l+m) w2^(k+m-1) w1^(k+l-1)",
        _F4[2],
        _L_M,
    ),
    _aux(
        "F8.aux1",
        f"{_COMP} S[k|w1](w2-1) S[l|w2](w3-1) S[m|w3](w1-1) w1^(k-1) w2^(l-1) w3^(m-1)",
        _F8[0],
        _CYC1,
    ),
    _aux(
        "F8.aux2",
        f"{_COMP} S[k|w2](w3-1) S[l|w3](w1-1) S[m|w1](w2-1) w2^(k-1) w3^(l-1) w1^(m-1)",
        _F8[0],
        _CYC2,
    ),
    _aux(
        "F8.aux3",
        f"{_COMP} S[k|w1](w3-1) S[l|w3](w2-1) S[m|w2](w1-1) w1^(k-1) w3^(l-1) w2^(m-1)",
        _F8[1],
        _CYC1,
    ),
    _aux(
        "F8.aux4",
        f"{_COMP} S[k|w3](w2-1) S[l|w2](w1-1) S[m|w1](w3-1) w3^(k-1) w2^(l-1) w1^(m-1)",
        _F8[1],
        _CYC2,
    ),
)
