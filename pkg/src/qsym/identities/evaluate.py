"""Exact evaluation of catalog expressions at concrete (n, w1, w2, w3)."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb

from ..algebra.mpoly import ZERO, MPoly, MPolyAccumulator
from ..algebra.poly import FPoly, inflate, monomial, to_fmpq
from ..algebra.ratfunc import RatFuncQ
from ..errors import DomainError
from ..qbernoulli import multinomial, power_sum, qbernoulli_affine
from .expr import (
    Bern,
    Binomial,
    Comp,
    Expr,
    Multinomial,
    PowSum,
    QPow,
    Range,
    Residue,
    Sum,
    WPow,
    mono_value,
)

# Concrete trees are nested tuples tagged by their first entry.  Slot
# monomials are replaced by numbers, and the factors of each product level are
# sorted so that two expressions differing only in factor order share a tree.


def _int(v: Fraction, what: str) -> int:
    if v.denominator != 1 or v < 1:
        raise DomainError(f"{what} must be a positive integer, got {v}")
    return int(v)


def _instantiate_node(node, w):
    if isinstance(node, Multinomial):
        return ("C", node.top, node.parts)
    if isinstance(node, Binomial):
        return ("b", node.top, node.bottom)
    if isinstance(node, Bern):
        scale = mono_value(node.ycoef, w) if node.yvar else Fraction(0)
        shifts = tuple((r, mono_value(c, w)) for r, c in node.shifts)
        return ("B", node.index, _int(mono_value(node.base, w), "base"), node.yvar or "", scale, shifts)
    if isinstance(node, PowSum):
        return ("S", node.index, _int(mono_value(node.base, w), "base"), w[node.bound])
    if isinstance(node, WPow):
        return ("W", mono_value(node.mono, w), node.exponent)
    if isinstance(node, QPow):
        terms = []
        for r, c in node.terms:
            terms.append((r, _int(mono_value(c, w), "q-exponent coefficient")))
        return ("Q", tuple(sorted(terms)))
    if isinstance(node, Sum):
        binders = []
        for b in node.binders:
            if isinstance(b, Comp):
                binders.append(("comp", b.names, b.total))
            elif isinstance(b, Range):
                binders.append(("range", b.name, b.top))
            elif isinstance(b, Residue):
                binders.append(("res", b.name, w[b.slot]))
        return ("SUM", tuple(binders), _instantiate_items(node.body, w))
    raise TypeError(f"unknown node {node!r}")


def _instantiate_items(items, w) -> tuple:
    nodes = [_instantiate_node(x, w) for x in items]
    return tuple(sorted(nodes, key=repr))


def instantiate(expr: Expr, w) -> tuple:
    """The concrete tree of ``expr`` at slot values w = (w1, w2, w3)."""
    w = tuple(int(x) for x in w)
    if len(w) != 3 or min(w) < 1:
        raise DomainError(f"w must be three positive integers, got {w}")
    return _instantiate_items(expr.items, w)


@lru_cache(maxsize=None)
def _power_sum_flint(k: int, bound: int, base: int) -> FPoly:
    return inflate(power_sum(k, bound - 1).flint, base)


def _assignments(binders, env: dict):
    """Every assignment of the binders' names consistent with env."""
    ranges = []
    for kind, names, arg in binders:
        if kind == "comp":
            total = arg.value(env)
            choices = []
            if len(names) == 3:
                for a in range(total + 1):
                    for b in range(total - a + 1):
                        choices.append((a, b, total - a - b))
            elif len(names) == 2:
                choices = [(a, total - a) for a in range(total + 1)]
            else:
                choices = [(total,)]
            ranges.append([tuple(zip(names, c)) for c in choices])
        elif kind == "range":
            ranges.append([((names, v),) for v in range(arg.value(env) + 1)])
        else:
            ranges.append([((names, v),) for v in range(arg)])
    for combo in product(*ranges):
        local = dict(env)
        for pairs in combo:
            local.update(pairs)
        yield local


def _eval_items(items: tuple, env: dict) -> MPoly:
    scalar = Fraction(1)
    qpoly = None
    polys = []
    sums = []
    for node in items:
        tag = node[0]
        if tag == "C":
            parts = [p.value(env) for p in node[2]]
            scalar *= multinomial(node[1].value(env), *parts)
        elif tag == "b":
            scalar *= comb(node[1].value(env), node[2].value(env))
        elif tag == "W":
            scalar *= node[1] ** node[2].value(env)
        elif tag == "S":
            p = _power_sum_flint(node[1].value(env), node[3], node[2])
            qpoly = p if qpoly is None else qpoly * p
        elif tag == "Q":
            e = sum(c * env[r] for r, c in node[1])
            if e:
                p = monomial(e)
                qpoly = p if qpoly is None else qpoly * p
        elif tag == "B":
            _, index, base, var, scale, shifts = node
            shift = sum((c * env[r] for r, c in shifts), Fraction(0))
            polys.append(qbernoulli_affine(index.value(env), base, var, scale, shift))
        elif tag == "SUM":
            sums.append(node)
        if scalar == 0:
            return ZERO
    if qpoly is not None and qpoly.is_zero():
        return ZERO
    for _, binders, body in sums:
        acc = MPolyAccumulator()
        for local in _assignments(binders, env):
            acc.add(_eval_items(body, local))
        polys.append(acc.freeze())
    if qpoly is None:
        coeff = None if scalar == 1 else scalar
    else:
        coeff = RatFuncQ._make(qpoly * to_fmpq(scalar) if scalar != 1 else qpoly, reduced=True)
    if not polys:
        return MPoly.constant(1 if coeff is None else coeff)
    polys.sort(key=lambda p: len(p.terms))
    out = polys[0] if coeff is None else polys[0].scale(coeff)
    for p in polys[1:]:
        out = out * p
    return out


@lru_cache(maxsize=None)
def evaluate_tree(tree: tuple, n: int) -> MPoly:
    return _eval_items(tree, {"n": n})


def evaluate(expr: Expr, n: int, w) -> MPoly:
    """The value of ``expr`` at (n, w) as an MPoly over Q(q)[L]."""
    if n < 0:
        raise DomainError("n must be >= 0")
    return evaluate_tree(instantiate(expr, w), n)


def clear_cache() -> None:
    evaluate_tree.cache_clear()
