import threading
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qsym.algebra import L, LogPoly, MPoly, PolyQ, RatFuncQ, eps_expand
from qsym.algebra.mpoly import mpoly_equal
from qsym.errors import DomainError
from qsym.qbernoulli import (
    QBernoulliCache,
    classical_bernoulli,
    multinomial,
    power_sum,
    qbernoulli_affine,
    qbernoulli_number,
    qbernoulli_poly,
    rebase,
)
from qsym.series import bernoulli_gf

Q = RatFuncQ(PolyQ.q())


def test_b0_and_b1():
    assert qbernoulli_number(0) == L * (Q - 1).inverse()
    inv = (Q - 1).inverse()
    assert qbernoulli_number(1) == LogPoly.constant(inv) - L * Q * inv * inv


def test_b2_limit_is_one_sixth():
    assert eps_expand(qbernoulli_number(2), 1).coefficient(0) == Fraction(1, 6)


def test_negative_index_rejected():
    with pytest.raises(DomainError):
        qbernoulli_number(-1)


@pytest.mark.parametrize("n", range(13))
def test_generating_function_agreement(n):
    assert bernoulli_gf(12).egf(n) == qbernoulli_number(n)


@pytest.mark.parametrize("n", range(13))
def test_log_degree_is_one(n):
    assert qbernoulli_number(n).degree() == 1


@pytest.mark.parametrize("n", range(13))
def test_classical_limit(n):
    assert eps_expand(qbernoulli_number(n), 1).coefficient(0) == classical_bernoulli(n)


def _recurrence_in_base(n, w):
    # independent rerun of the recurrence with q -> q^w, L -> w L, in plain RatFuncQ pairs
    qw = Q**w
    inv = (qw - 1).inverse()
    values = [L * w * inv]
    for m in range(1, n + 1):
        acc = LogPoly.constant(0)
        for k, b in enumerate(values):
            acc = acc + b * comb(m, k)
        acc = acc * qw * -1 + (1 if m == 1 else 0)
        values.append(acc * inv)
    return values[n]


@pytest.mark.parametrize("w", [1, 2, 3, 4])
def test_rebase_coherence(w):
    for n in range(9):
        assert rebase(qbernoulli_number(n), w) == _recurrence_in_base(n, w)
        assert qbernoulli_number(n, base=w) == _recurrence_in_base(n, w)


def test_rebase_examples():
    assert rebase(qbernoulli_number(0), 3) == L * 3 * (Q**3 - 1).inverse()
    assert rebase(qbernoulli_number(5), 1) == qbernoulli_number(5)
    assert rebase(qbernoulli_number(2), 3) == bernoulli_gf(4, base=3).egf(2)
    with pytest.raises(DomainError):
        rebase(qbernoulli_number(1), 0)


def test_qbernoulli_poly_examples():
    assert mpoly_equal(qbernoulli_poly(0), MPoly.constant(qbernoulli_number(0)))
    p1 = qbernoulli_poly(1)
    assert p1.coefficient({"x": 1}) == qbernoulli_number(0)
    assert p1.constant_term() == qbernoulli_number(1)
    for n in range(7):
        assert qbernoulli_poly(n, "y2").constant_term() == qbernoulli_number(n)
    with pytest.raises(ValueError):
        qbernoulli_poly(2, "z")


@given(st.integers(0, 6), st.fractions(-3, 3, max_denominator=3), st.fractions(-3, 3, max_denominator=3))
def test_affine_argument_matches_substitution(n, scale, shift):
    direct = qbernoulli_affine(n, 2, "y1", scale, shift)
    via = qbernoulli_poly(n, "y1", base=2).substitute_affine("y1", scale, shift)
    assert mpoly_equal(direct, via)


def test_power_sum_examples():
    assert power_sum(2, 2).coeffs == (0, 1, 4)
    for n in range(6):
        assert RatFuncQ(power_sum(0, n)) == (Q ** (n + 1) - 1) / (Q - 1)
    assert power_sum(3, 0).is_zero()
    assert power_sum(0, 0).coeffs == (1,)


def test_power_sum_splitting():
    for k in range(6):
        for a in range(5):
            for b in range(5):
                left = RatFuncQ(power_sum(k, a + b + 1))
                right = RatFuncQ(power_sum(k, a))
                tail = RatFuncQ.constant(0)
                for j in range(k + 1):
                    tail = tail + RatFuncQ(power_sum(j, b)) * (comb(k, j) * (a + 1) ** (k - j))
                assert left == right + Q ** (a + 1) * tail


def test_multinomial_examples():
    assert multinomial(3, 1, 1, 1) == 6
    assert multinomial(7, 7, 0, 0) == 1
    assert multinomial(4, 2, 1, 1) == 12
    with pytest.raises(DomainError):
        multinomial(4, 2, 1, 0)


def test_classical_bernoulli_examples():
    assert classical_bernoulli(0) == 1
    assert classical_bernoulli(1) == Fraction(-1, 2)
    assert classical_bernoulli(12) == Fraction(-691, 2730)
    for n in range(1, 13):
        assert sum(comb(n + 1, k) * classical_bernoulli(k) for k in range(n + 1)) == 0


def test_cache_extension_is_thread_safe():
    cache = QBernoulliCache(base=5)
    results = {}

    def work(i):
        results[i] = [cache.get(n) for n in range(10 - i % 3, -1, -1)]

    threads = [threading.Thread(target=work, args=(i,)) for i in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    reference = [qbernoulli_number(n, base=5) for n in range(11)]
    assert len(cache) == 11
    for vals in results.values():
        for v in vals:
            assert any(v == r for r in reference)
    assert all(cache.get(n) == reference[n] for n in range(11))
