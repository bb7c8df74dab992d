from math import comb

import pytest

from qsym.algebra import L, LogPoly, PolyQ, RatFuncQ
from qsym.errors import DomainError
from qsym.identities import (
    EXPANSIONS,
    crosscheck_expansion,
    multiplication_coefficient_check,
)
from qsym.identities.verify import (
    multiplication_rhs,
    multiplication_specialization_match,
)
from qsym.qbernoulli import power_sum, qbernoulli_number

Q = RatFuncQ(PolyQ.q())


def test_triple_power_sum_against_closed_form():
    r = crosscheck_expansion("L23.3", (2, 1, 1), 6)
    assert r.passed, r.detail


def test_single_power_sum_quotient_is_one_at_unit_weights():
    r = crosscheck_expansion("L12.1", (1, 1, 1), 6)
    assert r.passed
    assert r.params["quotient"] == "L12^1"


def test_cyclic_b_products_carry_the_index_note():
    r = crosscheck_expansion("L12.0", (1, 2, 1), 5)
    assert r.passed, r.detail
    assert len(r.flags) == 1 and r.flags[0]["kind"] == "reading"


@pytest.mark.parametrize("exp_id", sorted(EXPANSIONS))
def test_each_expansion_at_a_mixed_point(exp_id):
    assert crosscheck_expansion(exp_id, (1, 2, 2), 6).passed


def test_crosscheck_rejects_bad_input():
    with pytest.raises(DomainError):
        crosscheck_expansion("nope", (1, 1, 1), 3)
    with pytest.raises(DomainError):
        crosscheck_expansion("L23.0", (1, 1, 1), -1)


def test_multiplication_k0_is_telescoping():
    for w in range(1, 6):
        q_int = RatFuncQ(power_sum(0, w - 1))
        assert qbernoulli_number(0) * w == L * w * q_int * (Q**w - 1).inverse()
        assert multiplication_rhs(0, w) == qbernoulli_number(0) * w


def test_multiplication_unit_weight_is_identity():
    for k in range(8):
        assert multiplication_rhs(k, 1) == qbernoulli_number(k)


@pytest.mark.parametrize("w", range(1, 6))
def test_multiplication_coefficients(w):
    assert multiplication_coefficient_check(w, 12).passed
    assert multiplication_specialization_match(w, 12).passed


def test_multiplication_detects_a_wrong_side():
    # replacing the rebased factor by the unrebased one must break the identity
    w, k = 3, 2
    wrong = LogPoly.constant(0)
    for l in range(k + 1):
        wrong = wrong + qbernoulli_number(k - l) * (comb(k, l) * w ** (k - l)) * power_sum(l, w - 1)
    assert wrong != multiplication_rhs(k, w)


def test_expansion_ids_cover_both_quotient_families():
    families = {e.family for e in EXPANSIONS.values()}
    assert families == {"L23", "L12"}
    assert sorted(e.index for e in EXPANSIONS.values() if e.family == "L23") == [0, 1, 1, 2, 2, 2, 3]
