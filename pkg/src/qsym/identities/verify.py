"""Exact verification of the catalog: families, specializations, the w1/w2
chain, auxiliary equalities and the series cross-checks."""

from __future__ import annotations

from collections import Counter
from math import comb

from ..algebra.logpoly import LogPoly
from ..algebra.mpoly import MPoly, first_difference, mpoly_equal, render_monomial
from ..errors import DomainError
from ..qbernoulli import power_sum, qbernoulli_number, rebase
from ..report import FAIL, PASS, Clock, VerificationReport
from ..series import (
    LambdaSpec,
    bernoulli_gf,
    build_closed_form,
    geometric_qexp,
    lambda13_substitution,
    series_div,
)
from .catalog import AUXILIARY, CHAIN, COROLLARIES, EXPANSIONS, FAMILIES, Family
from .evaluate import evaluate
from .expr import SLOT_PERMUTATIONS, Expr, alpha_key, bound_renamings, flat_factors


def _mismatch(ref_label, ref: MPoly, label, value: MPoly) -> dict | None:
    exps = first_difference(ref, value)
    if exps is None:
        return None
    return {
        "variant": label,
        "reference": ref_label,
        "monomial": render_monomial(exps),
        "exponents": list(exps),
        "expected": ref.coefficient(exps).render(),
        "got": value.coefficient(exps).render(),
    }


def compare_all(labelled: list[tuple[str, MPoly]]) -> dict | None:
    """First mismatch of any value against the first one, or None."""
    ref_label, ref = labelled[0]
    for label, value in labelled[1:]:
        if not mpoly_equal(ref, value):
            return _mismatch(ref_label, ref, label, value)
    return None


def _perturbed(value: MPoly, exps) -> MPoly:
    exps = tuple(exps)
    terms = dict(value.terms)
    terms[exps] = terms.get(exps, LogPoly._raw(())) + 1
    return MPoly(terms)


def _w(w) -> tuple[int, int, int]:
    w = tuple(int(x) for x in w)
    if len(w) != 3 or min(w) < 1:
        raise DomainError(f"w must be three positive integers, got {w}")
    return w


def _family(family) -> Family:
    if isinstance(family, Family):
        return family
    try:
        return FAMILIES[family]
    except KeyError:
        raise DomainError(f"unknown family {family!r}") from None


# -- S3 images ----------------------------------------------------------------


def _perm_label(perm) -> str:
    return "S3:" + "".join(str(p + 1) for p in perm)


def slot_images(expr: Expr) -> list[tuple[str, Expr]]:
    """Distinct images of expr under the six slot permutations, in a fixed order."""
    seen = {}
    for perm in SLOT_PERMUTATIONS:
        image = expr.permute(perm)
        seen.setdefault(alpha_key(image), (_perm_label(perm), image))
    return list(seen.values())


def orbit_census(expr: Expr) -> int:
    """Number of distinct S3 images of expr up to renaming of bound indices."""
    return len(slot_images(expr))


def generate_variants(family, n: int, w) -> list[MPoly]:
    """Values of the S3 images of the canonical expression, deduplicated."""
    fam = _family(family)
    w = _w(w)
    out: list[MPoly] = []
    for _, image in slot_images(fam.canonical):
        v = evaluate(image, n, w)
        if not any(mpoly_equal(v, u) for u in out):
            out.append(v)
    return out


def _factor_diff(printed: Expr, image: Expr) -> tuple[int, list, list]:
    target = Counter(flat_factors(image.items))
    best = None
    for mapping in bound_renamings(printed):
        mine = Counter(flat_factors(printed.items, mapping))
        only_printed = sorted((mine - target).elements())
        only_image = sorted((target - mine).elements())
        size = len(only_printed) + len(only_image)
        if best is None or size < best[0]:
            best = (size, only_printed, only_image)
    return best


def _typo_flag(index: int, printed: Expr, images, n, w) -> dict:
    best = None
    for label, image in images:
        size, a, b = _factor_diff(printed, image)
        if best is None or size < best[0]:
            best = (size, label, image, a, b)
    _, label, image, a, b = best
    return {
        "variant": f"printed[{index}]",
        "kind": "printed expression is not an S3 image of the first",
        "nearest_image": label,
        "printed_only": a,
        "image_only": b,
        "value_agrees": mpoly_equal(evaluate(printed, n, w), evaluate(image, n, w)),
    }


def family_variants(family) -> tuple[list[tuple[str, Expr]], list[tuple[int, Expr]]]:
    """(compared variants, printed lines that are not images) for a family."""
    fam = _family(family)
    images = slot_images(fam.canonical)
    keys = {alpha_key(e) for _, e in images}
    compared = list(images)
    stray = []
    for i, e in enumerate(fam.printed):
        if alpha_key(e) in keys:
            compared.append((f"printed[{i}]", e))
        else:
            stray.append((i, e))
    return compared, stray


def verify_family(family, n: int, w, perturb=None) -> VerificationReport:
    """All S3 images and all printed lines of a family at (n, w).

    Printed lines that are not S3 images are reported as flags and left out
    of the comparison.  ``perturb=(variant_index, exponents)`` adds 1 to one
    coefficient of one compared variant, for fault-injection tests.
    """
    fam = _family(family)
    w = _w(w)
    with Clock() as clock:
        compared, stray = family_variants(fam)
        values = [(label, evaluate(e, n, w)) for label, e in compared]
        if perturb is not None:
            index, exps = perturb
            label, v = values[index]
            values[index] = (label, _perturbed(v, exps))
        detail = compare_all(values)
        images = [(label, e) for label, e in compared if label.startswith("S3:")]
        flags = [_typo_flag(i, e, images, n, w) for i, e in stray]
    return VerificationReport(
        "family", fam.id, {"n": n, "w": list(w)}, FAIL if detail else PASS, detail, flags, clock.millis
    )


def compared_count(family) -> int:
    return len(family_variants(family)[0])


# -- specializations, chain, auxiliary ----------------------------------------


def corollary_w(cor_id: str, free) -> tuple[int, int, int]:
    cor = COROLLARIES[cor_id]
    free = tuple(int(x) for x in free)
    if len(free) != len(cor.free_slots):
        raise DomainError(f"{cor_id} takes {len(cor.free_slots)} free slot values, got {len(free)}")
    w = [1, 1, 1]
    for slot, value in zip(cor.free_slots, free):
        w[slot] = value
    return _w(w)


def verify_corollary(cor_id: str, n: int, free) -> VerificationReport:
    """Printed specialization lines against the parent family at w with fixed slots = 1."""
    if cor_id not in COROLLARIES:
        raise DomainError(f"unknown corollary {cor_id!r}")
    cor = COROLLARIES[cor_id]
    w = corollary_w(cor_id, free)
    with Clock() as clock:
        parent = evaluate(FAMILIES[cor.parent].canonical, n, w)
        if cor.scale is not None:
            parent = parent * evaluate(cor.scale, n, w)
        values = [(f"{cor.parent}@w", parent)]
        values += [(f"printed[{i}]", evaluate(e, n, w)) for i, e in enumerate(cor.printed)]
        detail = compare_all(values)
    params = {"n": n, "w": list(w)}
    return VerificationReport("corollary", cor_id, params, FAIL if detail else PASS, detail, [], clock.millis)


def verify_intro_chain(n: int, w1: int, w2: int) -> VerificationReport:
    """The eight expressions of the w1/w2 chain, pairwise (against the first)."""
    w = _w((w1, w2, 1))
    with Clock() as clock:
        values = [(f"chain[{i}]", evaluate(e, n, w)) for i, e in enumerate(CHAIN)]
        detail = compare_all(values)
    params = {"n": n, "w": [w1, w2]}
    return VerificationReport("chain", "w1w2", params, FAIL if detail else PASS, detail, [], clock.millis)


def verify_auxiliary(aux_id: str, n: int, w) -> VerificationReport:
    aux = next((a for a in AUXILIARY if a.id == aux_id), None)
    if aux is None:
        raise DomainError(f"unknown auxiliary equality {aux_id!r}")
    w = _w(w)
    with Clock() as clock:
        detail = compare_all([("target", evaluate(aux.target, n, w)), ("expression", evaluate(aux.expr, n, w))])
    params = {"n": n, "w": list(w)}
    flags = [{"kind": "argument", "note": aux.reason}]
    return VerificationReport("auxiliary", aux_id, params, FAIL if detail else PASS, detail, flags, clock.millis)


# -- series cross-checks --------------------------------------------------------


def _series_mismatch(k: int, left, right, left_label="closed form", right_label="expression") -> dict | None:
    """Coefficient k comparison for LogPoly or MPoly values."""
    if isinstance(left, LogPoly) and isinstance(right, LogPoly):
        if left == right:
            return None
        return {"order": k, "expected": left.render(), "got": right.render()}
    left = left if isinstance(left, MPoly) else MPoly.constant(left)
    right = right if isinstance(right, MPoly) else MPoly.constant(right)
    d = _mismatch(left_label, left, right_label, right)
    if d is not None:
        d["order"] = k
    return d


def crosscheck_expansion(exp_id: str, w, K: int) -> VerificationReport:
    """n!-scaled t^n coefficients of the closed form against the printed coefficient, n <= K."""
    if exp_id not in EXPANSIONS:
        raise DomainError(f"unknown expansion {exp_id!r}")
    if K < 0:
        raise DomainError("K must be >= 0")
    exp = EXPANSIONS[exp_id]
    w = _w(w)
    with Clock() as clock:
        series = build_closed_form(LambdaSpec(exp.family, exp.index, w), K)
        detail = None
        for n in range(K + 1):
            detail = _series_mismatch(n, series.egf(n), evaluate(exp.expr, n, w))
            if detail:
                break
    flags = [{"kind": "reading", "note": note} for note in exp.notes]
    params = {"K": K, "w": list(w), "quotient": f"{exp.family}^{exp.index}"}
    return VerificationReport("expansion", exp_id, params, FAIL if detail else PASS, detail, flags, clock.millis)


def multiplication_rhs(k: int, w: int) -> LogPoly:
    """sum_l C(k, l) S_l(w-1) w^(k-l) B_{k-l} rebased to q^w."""
    acc = LogPoly._raw(())
    for l in range(k + 1):
        s = power_sum(l, w - 1)
        term = rebase(qbernoulli_number(k - l), w) * (comb(k, l) * w ** (k - l))
        acc = acc + term * s
    return acc


def multiplication_coefficient_check(w: int, K: int) -> VerificationReport:
    """w B_k = sum_l C(k, l) S_l(w-1) w^(k-l) B_{k-l, q^w} for k <= K."""
    if w < 1:
        raise DomainError("w must be >= 1")
    with Clock() as clock:
        detail = None
        for k in range(K + 1):
            detail = _series_mismatch(k, qbernoulli_number(k) * w, multiplication_rhs(k, w), "w*B_k", "power-sum side")
            if detail:
                break
    params = {"K": K, "w": [w]}
    return VerificationReport("multiplication", "coefficients", params, FAIL if detail else PASS, detail, [], clock.millis)


def multiplication_series_check(w: int, K: int) -> VerificationReport:
    """w (L+t)/(q e^t - 1) divided by the q^w generating function at w t equals
    sum_{i<w} q^i e^(i t), with the right side summed directly."""
    if w < 1:
        raise DomainError("w must be >= 1")
    with Clock() as clock:
        top = bernoulli_gf(K).scale(w)
        bottom = bernoulli_gf(K, base=w).rescale(w)
        quotient = series_div(top, bottom)
        target = geometric_qexp(w, K)
        detail = None
        for k in range(K + 1):
            detail = _series_mismatch(k, target.coefficient(k), quotient.coefficient(k), "geometric", "quotient")
            if detail:
                break
    params = {"K": K, "w": [w]}
    return VerificationReport("multiplication", "series", params, FAIL if detail else PASS, detail, [], clock.millis)


def multiplication_specialization_match(w: int, K: int) -> VerificationReport:
    """The multiplication-formula specialization at y1 = 0, times w, against the
    power-sum side of the coefficient identity, for n <= K."""
    cor = COROLLARIES["F4-w23"]
    wt = corollary_w("F4-w23", (w,))
    with Clock() as clock:
        detail = None
        for n in range(K + 1):
            at_zero = evaluate(cor.printed[1], n, wt).constant_term() * w
            detail = _series_mismatch(n, multiplication_rhs(n, w), at_zero, "coefficient identity", "specialization")
            if detail:
                break
    params = {"K": K, "w": [w]}
    return VerificationReport("multiplication", "specialization", params, FAIL if detail else PASS, detail, [], clock.millis)


def lambda13_check(index: int, w, K: int) -> VerificationReport:
    """L23 closed form at the pairwise products against the L13 closed form
    with t -> W t, q -> q^W."""
    w = _w(w)
    with Clock() as clock:
        left, right = lambda13_substitution(LambdaSpec("L13", index, w), K)
        detail = None
        for k in range(K + 1):
            detail = _series_mismatch(k, left.coefficient(k), right.coefficient(k), "L23", "L13 substituted")
            if detail:
                break
    params = {"K": K, "w": list(w), "index": index}
    return VerificationReport("lambda13", f"L13^{index}", params, FAIL if detail else PASS, detail, [], clock.millis)


__all__ = [
    "FAIL",
    "PASS",
    "VerificationReport",
    "compare_all",
    "compared_count",
    "multiplication_specialization_match",
    "corollary_w",
    "crosscheck_expansion",
    "multiplication_coefficient_check",
    "multiplication_rhs",
    "multiplication_series_check",
    "family_variants",
    "generate_variants",
    "lambda13_check",
    "orbit_census",
    "slot_images",
    "verify_auxiliary",
    "verify_corollary",
    "verify_family",
    "verify_intro_chain",
]
