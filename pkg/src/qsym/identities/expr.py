"""Expression trees for the identity catalog.

Expressions are written in a compact text form and parsed once::

    w1^(n-1) sum[k=0..n] C(n,k) B[k|w1w2](w3*y1) w3^(n-k) w2^(k)
        sum[i<w1] q^(w2w3*i) B[n-k|w1w3](w2*y2 + w2/w1*i)

Juxtaposition is multiplication and a ``sum[...]`` binds everything to its
right.  Binders are ``k+l+m=n`` (compositions), ``k=0..n`` (a range) and
``i<w1`` (a residue index running over 0..w1-1).  ``B[idx|base](arg)`` is a
q-Bernoulli polynomial in base q^base, ``S[idx|base](w3-1)`` a q-power sum,
``C(n;k,l,m)`` / ``C(n,k)`` multinomial / binomial coefficients, ``w1^(...)``
and ``(w1w2)^(...)`` integer powers of the slot values and ``q^(...)`` a
q-monomial linear in residue indices.  A base written ``1`` means q itself.

The slot values w1, w2, w3 only ever occur through monomials (exponent
triples), so a permutation of the slots acts on every node directly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

# -- linear index expressions ---------------------------------------------------


@dataclass(frozen=True)
class Lin:
    """sum(coef * name) + const with integer coefficients, terms sorted by name."""

    terms: tuple[tuple[str, int], ...]
    const: int = 0

    @staticmethod
    def make(terms: dict, const: int = 0) -> Lin:
        return Lin(tuple(sorted((v, c) for v, c in terms.items() if c)), const)

    def value(self, env: dict) -> int:
        return self.const + sum(c * env[v] for v, c in self.terms)

    def rename(self, mapping: dict) -> Lin:
        out: dict[str, int] = {}
        for v, c in self.terms:
            v = mapping.get(v, v)
            out[v] = out.get(v, 0) + c
        return Lin.make(out, self.const)

    def __add__(self, other: Lin) -> Lin:
        out = dict(self.terms)
        for v, c in other.terms:
            out[v] = out.get(v, 0) + c
        return Lin.make(out, self.const + other.const)

    def times(self, k: int) -> Lin:
        return Lin.make({v: c * k for v, c in self.terms}, self.const * k)

    def render(self) -> str:
        parts = []
        for v, c in self.terms:
            mono = v if abs(c) == 1 else f"{abs(c)}{v}"
            parts.append(("-" if c < 0 else "+") + mono)
        if self.const or not parts:
            parts.append(("-" if self.const < 0 else "+") + str(abs(self.const)))
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s


# -- slot monomials -------------------------------------------------------------

Mono = tuple  # (e1, e2, e3): w1^e1 w2^e2 w3^e3


def mono_permute(m: Mono, perm) -> Mono:
    """Image of a slot monomial under w_s -> w_{perm[s]}."""
    out = [0, 0, 0]
    for s, e in enumerate(m):
        out[perm[s]] += e
    return tuple(out)


def mono_value(m: Mono, w) -> Fraction:
    v = Fraction(1)
    for x, e in zip(w, m):
        if e:
            v *= Fraction(x) ** e
    return v


def mono_render(m: Mono) -> str:
    num = "".join(f"w{s + 1}" * e for s, e in enumerate(m) if e > 0)
    den = "".join(f"w{s + 1}" * -e for s, e in enumerate(m) if e < 0)
    num = num or "1"
    return f"{num}/{den}" if den else num


# -- nodes ----------------------------------------------------------------------


@dataclass(frozen=True)
class Multinomial:
    top: Lin
    parts: tuple[Lin, ...]


@dataclass(frozen=True)
class Binomial:
    top: Lin
    bottom: Lin


@dataclass(frozen=True)
class Bern:
    """B_{index, q^base}(ycoef*yvar + sum coef*r over shifts)."""

    index: Lin
    base: Mono
    yvar: str | None
    ycoef: Mono
    shifts: tuple[tuple[str, Mono], ...]


@dataclass(frozen=True)
class PowSum:
    """S_{index, q^base}(w_bound - 1)."""

    index: Lin
    base: Mono
    bound: int


@dataclass(frozen=True)
class WPow:
    mono: Mono
    exponent: Lin


@dataclass(frozen=True)
class QPow:
    """q^(sum coef*r), coef a slot monomial."""

    terms: tuple[tuple[str, Mono], ...]


@dataclass(frozen=True)
class Comp:
    names: tuple[str, ...]
    total: Lin


@dataclass(frozen=True)
class Range:
    name: str
    top: Lin


@dataclass(frozen=True)
class Residue:
    name: str
    slot: int


@dataclass(frozen=True)
class Sum:
    binders: tuple
    body: tuple


@dataclass(frozen=True)
class Expr:
    items: tuple
    source: str = ""

    def permute(self, perm) -> Expr:
        return Expr(_permute_items(self.items, tuple(perm)))

    def render(self) -> str:
        return render_items(self.items)


# -- parser ---------------------------------------------------------------------

_MONO = r"(?:w[123])+|1"
_RE_MONO = re.compile(rf"^(?:{_MONO})$")
_RE_ARG_TERM = re.compile(
    rf"^(?:(?P<num>{_MONO})(?:/(?P<den>(?:w[123])+))?\*)?(?P<var>[a-z]\d?)(?:/(?P<den2>(?:w[123])+))?$"
)
_RE_QTERM = re.compile(rf"^(?:(?P<coef>{_MONO})\*)?(?P<var>[a-z])$")
_RE_LIN_TERM = re.compile(r"([+-]?)\s*(\d*)([a-z]?)")


class ParseError(ValueError):
    pass


def parse_mono(text: str) -> Mono:
    text = text.strip()
    if not _RE_MONO.match(text):
        raise ParseError(f"bad slot monomial {text!r}")
    out = [0, 0, 0]
    for d in re.findall(r"w([123])", text):
        out[int(d) - 1] += 1
    return tuple(out)


def _ratio(num: str | None, den: str | None) -> Mono:
    m = parse_mono(num) if num else (0, 0, 0)
    if den:
        d = parse_mono(den)
        m = tuple(a - b for a, b in zip(m, d))
    return m


def parse_lin(text: str) -> Lin:
    text = text.replace(" ", "")
    if not text:
        raise ParseError("empty index expression")
    terms: dict[str, int] = {}
    const = 0
    pos = 0
    while pos < len(text):
        m = _RE_LIN_TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"bad index expression {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        digits, name = m.group(2), m.group(3)
        if not digits and not name:
            raise ParseError(f"bad index expression {text!r}")
        coef = sign * (int(digits) if digits else 1)
        if name:
            terms[name] = terms.get(name, 0) + coef
        else:
            const += coef
        pos = m.end()
    return Lin.make(terms, const)


def _parse_arg(text: str):
    yvar, ycoef, shifts = None, (0, 0, 0), []
    for raw in text.split("+"):
        m = _RE_ARG_TERM.match(raw.strip())
        if not m:
            raise ParseError(f"bad argument term {raw!r}")
        var = m.group("var")
        coef = _ratio(m.group("num"), m.group("den") or m.group("den2"))
        if var.startswith("y"):
            if yvar is not None:
                raise ParseError(f"two y variables in {text!r}")
            yvar, ycoef = var, coef
        else:
            shifts.append((var, coef))
    return yvar, ycoef, tuple(sorted(shifts))


def _parse_qterms(text: str):
    out = []
    for raw in text.split("+"):
        m = _RE_QTERM.match(raw.strip())
        if not m:
            raise ParseError(f"bad q-exponent term {raw!r}")
        out.append((m.group("var"), parse_mono(m.group("coef")) if m.group("coef") else (0, 0, 0)))
    return tuple(sorted(out))


def _parse_binders(text: str) -> tuple:
    out = []
    for raw in text.split(","):
        raw = raw.replace(" ", "")
        if "<" in raw:
            name, slot = raw.split("<")
            out.append(Residue(name, parse_mono(slot).index(1)))
        elif ".." in raw:
            lhs, top = raw.split("..")
            name, lo = lhs.split("=")
            if lo != "0":
                raise ParseError(f"ranges start at 0: {raw!r}")
            out.append(Range(name, parse_lin(top)))
        elif "=" in raw:
            lhs, total = raw.split("=")
            out.append(Comp(tuple(lhs.split("+")), parse_lin(total)))
        else:
            raise ParseError(f"bad binder {raw!r}")
    return tuple(out)


def _close(text: str, pos: int, opener: str, closer: str) -> int:
    depth = 0
    for j in range(pos, len(text)):
        if text[j] == opener:
            depth += 1
        elif text[j] == closer:
            depth -= 1
            if depth == 0:
                return j
    raise ParseError(f"unbalanced {opener}{closer} in {text!r}")


def _parse_items(text: str, pos: int) -> tuple:
    items = []
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            return tuple(items)
        rest = text[pos:]
        if rest.startswith("sum["):
            end = _close(text, pos + 3, "[", "]")
            binders = _parse_binders(text[pos + 4 : end])
            items.append(Sum(binders, _parse_items(text, end + 1)))
            return tuple(items)
        if rest.startswith("C("):
            end = _close(text, pos + 1, "(", ")")
            inner = text[pos + 2 : end]
            if ";" in inner:
                top, parts = inner.split(";")
                items.append(Multinomial(parse_lin(top), tuple(parse_lin(p) for p in parts.split(","))))
            else:
                top, bottom = inner.split(",")
                items.append(Binomial(parse_lin(top), parse_lin(bottom)))
            pos = end + 1
            continue
        if rest.startswith(("B[", "S[")):
            end = _close(text, pos + 1, "[", "]")
            idx, base = text[pos + 2 : end].split("|")
            aend = _close(text, end + 1, "(", ")")
            arg = text[end + 2 : aend]
            base_mono = parse_mono(base or "1")
            if rest[0] == "B":
                yvar, ycoef, shifts = _parse_arg(arg)
                items.append(Bern(parse_lin(idx), base_mono, yvar, ycoef, shifts))
            else:
                slot, minus = arg.replace(" ", "").split("-")
                if minus != "1":
                    raise ParseError(f"power-sum bound must be w-1, got {arg!r}")
                items.append(PowSum(parse_lin(idx), base_mono, parse_mono(slot).index(1)))
            pos = aend + 1
            continue
        if rest.startswith("q^("):
            end = _close(text, pos + 2, "(", ")")
            items.append(QPow(_parse_qterms(text[pos + 3 : end])))
            pos = end + 1
            continue
        m = re.match(rf"\(?({_MONO})\)?\^\(", rest)
        if m:
            start = pos + m.end() - 1
            end = _close(text, start, "(", ")")
            items.append(WPow(parse_mono(m.group(1)), parse_lin(text[start + 1 : end])))
            pos = end + 1
            continue
        raise ParseError(f"cannot parse at {rest[:30]!r}")


def parse(text: str) -> Expr:
    """Parse one expression of the catalog language."""
    try:
        items = _parse_items(" ".join(text.split()), 0)
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(f"malformed expression {text!r}: {exc}") from None
    return Expr(items, source=text)


# -- slot permutations ----------------------------------------------------------


def _permute_node(node, perm):
    if isinstance(node, Bern):
        return Bern(
            node.index,
            mono_permute(node.base, perm),
            node.yvar,
            mono_permute(node.ycoef, perm),
            tuple(sorted((r, mono_permute(c, perm)) for r, c in node.shifts)),
        )
    if isinstance(node, PowSum):
        return PowSum(node.index, mono_permute(node.base, perm), perm[node.bound])
    if isinstance(node, WPow):
        return WPow(mono_permute(node.mono, perm), node.exponent)
    if isinstance(node, QPow):
        return QPow(tuple(sorted((r, mono_permute(c, perm)) for r, c in node.terms)))
    if isinstance(node, Sum):
        binders = tuple(Residue(b.name, perm[b.slot]) if isinstance(b, Residue) else b for b in node.binders)
        return Sum(binders, _permute_items(node.body, perm))
    return node


def _permute_items(items, perm) -> tuple:
    return tuple(_permute_node(x, perm) for x in items)


# -- rendering ------------------------------------------------------------------


def _render_arg(yvar, ycoef, shifts) -> str:
    parts = []
    for var, coef in ([(yvar, ycoef)] if yvar else []) + list(shifts):
        num = mono_render(tuple(max(e, 0) for e in coef))
        den = mono_render(tuple(max(-e, 0) for e in coef))
        if den != "1":
            parts.append(f"{num}/{den}*{var}" if num != "1" else f"{var}/{den}")
        else:
            parts.append(var if num == "1" else f"{num}*{var}")
    return " + ".join(parts) if parts else "0"


def render_node(node) -> str:
    if isinstance(node, Multinomial):
        return f"C({node.top.render()};{','.join(p.render() for p in node.parts)})"
    if isinstance(node, Binomial):
        return f"C({node.top.render()},{node.bottom.render()})"
    if isinstance(node, Bern):
        return f"B[{node.index.render()}|{mono_render(node.base)}]({_render_arg(node.yvar, node.ycoef, node.shifts)})"
    if isinstance(node, PowSum):
        return f"S[{node.index.render()}|{mono_render(node.base)}](w{node.bound + 1}-1)"
    if isinstance(node, WPow):
        m = mono_render(node.mono)
        m = m if sum(node.mono) == 1 and min(node.mono) >= 0 else f"({m})"
        return f"{m}^({node.exponent.render()})"
    if isinstance(node, QPow):
        terms = [(r if sum(c) == 0 else f"{mono_render(c)}*{r}") for r, c in node.terms]
        return f"q^({' + '.join(terms)})"
    if isinstance(node, Sum):
        return f"sum[{', '.join(render_binder(b) for b in node.binders)}] {render_items(node.body)}"
    raise TypeError(node)


def render_binder(b) -> str:
    if isinstance(b, Comp):
        return f"{'+'.join(b.names)}={b.total.render()}"
    if isinstance(b, Range):
        return f"{b.name}=0..{b.top.render()}"
    return f"{b.name}<w{b.slot + 1}"


def render_items(items) -> str:
    return " ".join(render_node(x) for x in items)


# -- alpha-canonical form -------------------------------------------------------


def _merge_powers(items) -> list:
    """Fold all WPow factors of one product level into per-slot exponents."""
    expo = [Lin(()), Lin(()), Lin(())]
    others = []
    for x in items:
        if isinstance(x, WPow):
            for s, e in enumerate(x.mono):
                if e:
                    expo[s] = expo[s] + x.exponent.times(e)
        else:
            others.append(x)
    for s in range(3):
        if expo[s].terms or expo[s].const:
            mono = [0, 0, 0]
            mono[s] = 1
            others.append(WPow(tuple(mono), expo[s]))
    return others


def _rename_node(node, mapping: dict):
    if isinstance(node, Multinomial):
        return Multinomial(node.top.rename(mapping), tuple(p.rename(mapping) for p in node.parts))
    if isinstance(node, Binomial):
        return Binomial(node.top.rename(mapping), node.bottom.rename(mapping))
    if isinstance(node, Bern):
        shifts = tuple(sorted((mapping.get(r, r), c) for r, c in node.shifts))
        return Bern(node.index.rename(mapping), node.base, node.yvar, node.ycoef, shifts)
    if isinstance(node, PowSum):
        return PowSum(node.index.rename(mapping), node.base, node.bound)
    if isinstance(node, WPow):
        return WPow(node.mono, node.exponent.rename(mapping))
    if isinstance(node, QPow):
        return QPow(tuple(sorted((mapping.get(r, r), c) for r, c in node.terms)))
    if isinstance(node, Sum):
        binders = []
        for b in node.binders:
            if isinstance(b, Comp):
                binders.append(Comp(tuple(mapping.get(v, v) for v in b.names), b.total.rename(mapping)))
            elif isinstance(b, Range):
                binders.append(Range(mapping.get(b.name, b.name), b.top.rename(mapping)))
            else:
                binders.append(Residue(mapping.get(b.name, b.name), b.slot))
        return Sum(tuple(binders), tuple(_rename_node(x, mapping) for x in node.body))
    return node


def _normal_string(items) -> str:
    parts = []
    for x in _merge_powers(items):
        if isinstance(x, Sum):
            binders = sorted(
                render_binder(Comp(tuple(sorted(b.names)), b.total)) if isinstance(b, Comp) else render_binder(b)
                for b in x.binders
            )
            parts.append(f"sum[{', '.join(binders)}]{{{_normal_string(x.body)}}}")
        elif isinstance(x, Multinomial):
            parts.append(f"C({x.top.render()};{','.join(sorted(p.render() for p in x.parts))})")
        else:
            parts.append(render_node(x))
    return " ".join(sorted(parts))


def _binder_groups(items, out: list) -> list:
    for x in items:
        if isinstance(x, Sum):
            names = []
            for b in x.binders:
                names.extend(b.names if isinstance(b, Comp) else [b.name])
            out.append(names)
            _binder_groups(x.body, out)
    return out


def _renamings(items):
    """All renamings of bound names to placeholders, permuting within each sum."""
    groups = _binder_groups(items, [])
    maps = [{}]
    counter = 0
    for names in groups:
        placeholders = [f"_{counter + j}" for j in range(len(names))]
        counter += len(names)
        maps = [
            {**m, **dict(zip(names, perm))}
            for m in maps
            for perm in permutations(placeholders)
        ]
    return maps


def alpha_key(expr: Expr) -> str:
    """A string equal for two expressions iff they agree up to renaming of
    bound indices, order of binders in one sum and order of factors."""
    best = None
    for mapping in _renamings(expr.items):
        s = _normal_string(tuple(_rename_node(x, mapping) for x in expr.items))
        if best is None or s < best:
            best = s
    return best


def flat_factors(items, mapping=None, depth: int = 0) -> list[str]:
    """Factor strings tagged with nesting depth, for locating textual differences."""
    mapping = mapping or {}
    out = []
    for x in _merge_powers(tuple(_rename_node(y, mapping) for y in items)):
        if isinstance(x, Sum):
            out.append(f"{depth}:sum[{', '.join(render_binder(b) for b in x.binders)}]")
            out.extend(flat_factors(x.body, None, depth + 1))
        else:
            out.append(f"{depth}:{render_node(x)}")
    return out


def bound_renamings(expr: Expr) -> list[dict]:
    """Renamings of bound names among themselves (within each sum)."""
    groups = _binder_groups(expr.items, [])
    maps = [{}]
    for names in groups:
        maps = [{**m, **dict(zip(names, perm))} for m in maps for perm in permutations(names)]
    return maps


SLOT_PERMUTATIONS = tuple(permutations(range(3)))
