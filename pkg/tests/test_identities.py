import itertools
from fractions import Fraction
from math import comb

import pytest

from qsym.algebra import L, LogPoly, MPoly, PolyQ, RatFuncQ
from qsym.algebra.mpoly import mpoly_equal
from qsym.errors import DomainError
from qsym.identities import (
    AUXILIARY,
    CHAIN,
    COROLLARIES,
    EXPANSIONS,
    FAMILIES,
    evaluate,
    generate_variants,
    orbit_census,
    parse,
    verify_auxiliary,
    verify_corollary,
    verify_family,
    verify_intro_chain,
)
from qsym.identities.expr import ParseError, alpha_key
from qsym.identities.verify import family_variants
from qsym.qbernoulli import power_sum, qbernoulli_number, qbernoulli_poly, rebase

Q = RatFuncQ(PolyQ.q())


def q_int(n, base):
    """[n]_{q^base} = 1 + q^base + ... + q^(base(n-1))."""
    return RatFuncQ(power_sum(0, n - 1).substitute_power(base))


# -- parser and canonical keys ----------------------------------------------------


def test_parse_render_round_trip():
    for fam in FAMILIES.values():
        for e in fam.printed:
            again = parse(e.render())
            assert again.render() == e.render()
            assert alpha_key(again) == alpha_key(e)


@pytest.mark.parametrize(
    "text",
    ["B[k|w4](w1*y1)", "sum[k+l+m=n] C(n;k,l,m", "foo(3)", "S[k|w1](w2)"],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text)


def test_alpha_key_ignores_bound_names_and_factor_order():
    a = parse("sum[k+l+m=n] C(n;k,l,m) B[k|w1](w2*y) B[l|w2](w3*y) B[m|w3](w1*y) w1^(k) w2^(l) w3^(m)")
    b = parse("sum[a+b+c=n] C(n;c,a,b) w3^(c) B[b|w2](w3*y) w1^(a) B[a|w1](w2*y) w2^(b) B[c|w3](w1*y)")
    assert alpha_key(a) == alpha_key(b)
    c = parse("sum[k+l+m=n] C(n;k,l,m) B[k|w1](w2*y) B[l|w2](w3*y) B[m|w3](w1*y) w1^(k) w2^(m) w3^(l)")
    assert alpha_key(a) != alpha_key(c)


@pytest.mark.parametrize(
    "fid,count", [("F1", 6), ("F2", 6), ("F3", 6), ("F4", 3), ("F5", 6), ("F6", 3), ("F7", 2), ("F8", 2)]
)
def test_orbit_census(fid, count):
    assert orbit_census(FAMILIES[fid].canonical) == count == FAMILIES[fid].expected_images
    assert 6 % count == 0


def test_triple_power_sum_expansion_is_fully_invariant():
    assert orbit_census(EXPANSIONS["L23.3"].expr) == 1


def test_printed_lines_are_images_except_the_known_one():
    for fid, fam in FAMILIES.items():
        _, stray = family_variants(fam)
        assert [i for i, _ in stray] == ([3] if fid == "F5" else [])


# -- evaluation -----------------------------------------------------------------------


def test_residue_sums_collapse_at_unit_weights():
    e = parse("w1^(n-1) sum[i<w1] q^(w2*i) B[n|w1](w2*y1 + w2/w1*i)")
    for n in range(5):
        assert mpoly_equal(evaluate(e, n, (1, 1, 1)), qbernoulli_poly(n, "y1"))


@pytest.mark.parametrize("w", [(1, 2, 3), (2, 2, 1), (3, 1, 2)])
def test_f8_at_zero(w):
    w1, w2, w3 = w
    expected = q_int(w1, w3) * q_int(w2, w1) * q_int(w3, w2) * RatFuncQ.constant(1) / (w1 * w2 * w3)
    got = evaluate(FAMILIES["F8"].canonical, 0, w)
    assert mpoly_equal(got, MPoly.constant(LogPoly.constant(expected)))


@pytest.mark.parametrize("w", [(1, 2, 3), (2, 3, 3)])
def test_f1_at_zero_is_product_of_rebased_b0(w):
    w1, w2, w3 = w
    expected = LogPoly.constant(1)
    for a in (w2 * w3, w1 * w3, w1 * w2):
        expected = expected * (L * a * (Q**a - 1).inverse())
    assert mpoly_equal(evaluate(FAMILIES["F1"].canonical, 0, w), MPoly.constant(expected))


def test_negative_weight_exponents_give_rational_scalars():
    e = parse("sum[k=0..n] C(n,k) w3^(k-1)")
    # sum_k C(n,k) 3^(k-1) = 4^n / 3
    for n in range(4):
        assert mpoly_equal(evaluate(e, n, (1, 1, 3)), MPoly.constant(Fraction(4**n, 3)))


def test_bad_weights_rejected():
    with pytest.raises(DomainError):
        evaluate(FAMILIES["F1"].canonical, 1, (0, 1, 1))
    with pytest.raises(DomainError):
        evaluate(FAMILIES["F1"].canonical, -1, (1, 1, 1))


# -- families ----------------------------------------------------------------------------


def test_generate_variants_unit_weights():
    for fid in FAMILIES:
        assert len(generate_variants(fid, 2, (1, 1, 1))) == 1


def test_f4_three_images_one_value():
    for n in range(5):
        assert len(generate_variants("F4", n, (1, 2, 3))) == 1


def test_verify_f1_passes():
    r = verify_family("F1", 3, (1, 2, 3))
    assert r.passed and r.detail is None and r.flags == []


def test_verify_f1_perturbed_fails_at_the_perturbed_monomial():
    exps = (0, 0, 1, 1, 0)
    r = verify_family("F1", 3, (1, 2, 3), perturb=(4, exps))
    assert not r.passed
    assert r.detail["exponents"] == list(exps)
    assert r.detail["monomial"] == "y1*y2"


def test_verify_f5_flags_the_fourth_printed_line():
    r = verify_family("F5", 2, (2, 3, 1))
    assert r.passed
    assert len(r.flags) == 1
    flag = r.flags[0]
    assert flag["variant"] == "printed[3]"
    assert flag["printed_only"] == ["2:B[k|w1w2](w3*y1 + w3/w1*i)"]
    assert flag["image_only"] == ["2:B[k|w1w2](w3*y1 + w3/w2*i)"]
    # at n = 0 the shift drops out, beyond that the printed line is a different value
    assert verify_family("F5", 0, (2, 3, 1)).flags[0]["value_agrees"] is True
    assert verify_family("F5", 3, (2, 3, 1)).flags[0]["value_agrees"] is False


def test_unknown_family():
    with pytest.raises(DomainError):
        verify_family("F9", 1, (1, 1, 1))


# -- specializations, chain, auxiliary ---------------------------------------------------


def test_multiplication_formula_specialization():
    # B_{n,q}(w1 y1) = sum_k C(n,k) B_{k,q^w1}(y1) S_{n-k,q}(w1-1) w1^(k-1), built here by hand
    n, w1 = 4, 3
    left = qbernoulli_poly(n, "y1").substitute_affine("y1", w1, 0)
    right = MPoly.constant(0)
    for k in range(n + 1):
        b = qbernoulli_poly(k, "y1", base=w1)
        s = RatFuncQ(power_sum(n - k, w1 - 1))
        scalar = Fraction(comb(n, k) * w1**k, w1)
        right = right + b.scale(LogPoly.constant(s * scalar))
    assert mpoly_equal(left, right)
    assert verify_corollary("F4-w23", n, (w1,)).passed


def test_multiplication_formula_with_residues():
    for n in range(4):
        assert verify_corollary("F5-w23", n, (2,)).passed


@pytest.mark.parametrize("cid", sorted(COROLLARIES))
def test_corollaries_at_unit_weights(cid):
    free = (1,) * len(COROLLARIES[cid].free_slots)
    for n in range(4):
        assert verify_corollary(cid, n, free).passed


@pytest.mark.parametrize("cid", sorted(COROLLARIES))
def test_corollaries_sample(cid):
    free = (2, 3)[: len(COROLLARIES[cid].free_slots)]
    assert verify_corollary(cid, 4, free).passed


def test_corollary_errors():
    with pytest.raises(DomainError):
        verify_corollary("nope", 1, (1,))
    with pytest.raises(DomainError):
        verify_corollary("F2-w3", 1, (1,))


def test_specialization_coherence():
    # the corollary's parent value is the family value at w3 = 1
    for n in range(4):
        fam = evaluate(FAMILIES["F3"].canonical, n, (2, 3, 1))
        line = evaluate(COROLLARIES["F3-w3"].printed[2], n, (2, 3, 1))
        assert mpoly_equal(fam, line)


def test_chain_at_zero():
    w1, w2 = 2, 3
    expected = q_int(w1, w2) * q_int(w2, w1) * (Q ** (w1 * w2) - 1).inverse()
    for e in CHAIN:
        got = evaluate(e, 0, (w1, w2, 1))
        assert mpoly_equal(got, MPoly.constant(L * expected))


def test_chain_grid_small():
    for w1, w2 in itertools.product(range(1, 4), repeat=2):
        for n in range(5):
            assert verify_intro_chain(n, w1, w2).passed


def test_auxiliary_equalities():
    for aux in AUXILIARY:
        for w in itertools.product(range(1, 4), repeat=3):
            for n in range(7):
                assert verify_auxiliary(aux.id, n, w).passed


def test_rebase_agrees_with_native_base_in_evaluation():
    e = parse("B[n|w1w2](y1)")
    for n in range(5):
        native = evaluate(e, n, (2, 3, 1))
        assert mpoly_equal(native, rebase(qbernoulli_poly(n, "y1"), 6))
    assert qbernoulli_number(0, 6) == rebase(qbernoulli_number(0), 6)
