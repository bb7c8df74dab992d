import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qsym.errors import DomainError, NotInvertibleError
from qsym.padic import (
    PadicNum,
    VolkenbornParams,
    bernoulli_value,
    moment_check,
    moment_offset,
    padic_log,
    shift_identity_check,
    valuation,
    volkenborn_moment,
)


def series_log_mod(a: int, p: int, M: int, terms: int = 60) -> int:
    # plain rational partial sum of log(1 + x), reduced mod p^M at the end
    x = Fraction(a - 1)
    total = sum(Fraction((-1) ** (k + 1)) * x**k / k for k in range(1, terms))
    mod = p**M
    return total.numerator * pow(total.denominator, -1, mod) % mod


# -- numbers ------------------------------------------------------------------


def test_valuation_examples():
    assert valuation(18, 3) == 2
    assert valuation(Fraction(5, 27), 3) == -3
    assert valuation(0, 5) is None


def test_from_rational_and_residue():
    x = PadicNum.from_rational(Fraction(1, 2), 3, 4)
    assert (x.v, x.M) == (0, 4)
    assert x.residue() * 2 % 81 == 1
    y = PadicNum.from_rational(54, 3, 2)
    assert y.is_zero() and y.absprec == 2


def test_exact_zero_and_inverse():
    z = PadicNum.exact_zero(5)
    assert z.is_exact_zero and z.valuation() == float("inf")
    with pytest.raises(NotInvertibleError):
        z.inverse()
    with pytest.raises(NotInvertibleError):
        PadicNum.zero(5, 3).inverse()


def test_cancellation_loses_precision():
    a = PadicNum.from_rational(1 + 3**4, 3, 6)
    b = PadicNum.from_rational(1, 3, 6)
    d = a - b
    assert d.valuation() == 4
    assert d.absprec == 6 and d.M == 2


def test_mixed_primes_rejected():
    with pytest.raises(DomainError):
        PadicNum.from_rational(1, 3, 4) + PadicNum.from_rational(1, 5, 4)


padic_rationals = st.fractions(min_value=-200, max_value=200, max_denominator=40).filter(
    lambda x: x != 0 and x.denominator % 3 != 0
)


@given(padic_rationals, padic_rationals, padic_rationals)
def test_ring_laws_at_common_precision(a, b, c):
    A, B, C = (PadicNum.from_rational(t, 3, 8) for t in (a, b, c))
    assert (A + B) + C == A + (B + C)
    assert (A * B) * C == A * (B * C)
    assert A * (B + C) == A * B + A * C
    # arithmetic agrees with reducing the exact rational result
    assert A * B + C == PadicNum.from_rational(a * b + c, 3, 8)


@given(padic_rationals)
def test_unit_inverse(a):
    A = PadicNum.from_rational(a, 3, 6)
    assert A * A.inverse() == PadicNum.from_rational(1, 3, 6)


# -- logarithm ------------------------------------------------------------------


def test_log_of_one_is_zero_to_full_precision():
    got = padic_log(PadicNum.from_rational(1, 3, 5))
    assert got.is_zero() and got.absprec >= 5


def test_log_of_four_mod_27():
    got = padic_log(PadicNum.from_rational(4, 3, 3))
    assert got.residue() == 21 == series_log_mod(4, 3, 3)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_log_matches_series_oracle(p):
    for a in (1 + p, 1 - p, 1 + 2 * p, 1 + p * p):
        got = padic_log(PadicNum.from_rational(a, p, 6))
        assert got.residue() % p**6 == series_log_mod(a, p, 6, terms=80)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_log_homomorphism(p):
    rng = random.Random(p)
    for _ in range(20):
        a = 1 + p * rng.randrange(1, 50)
        b = 1 + p * rng.randrange(1, 50)
        A, B = (PadicNum.from_rational(t, p, 8) for t in (a, b))
        assert padic_log(A * B) == padic_log(A) + padic_log(B)
        assert padic_log(A * A) == padic_log(A) * 2


def test_log_domain():
    with pytest.raises(DomainError):
        padic_log(PadicNum.from_rational(2, 3, 5))
    with pytest.raises(DomainError):
        padic_log(PadicNum.from_rational(3, 3, 5))
    with pytest.raises(DomainError):
        padic_log(PadicNum.from_rational(3, 2, 5))


# -- Volkenborn sums ---------------------------------------------------------------


def test_params_validation():
    for bad in [(3, 1), (3, 5), (4, 5), (9, 10), (3, Fraction(4, 3))]:
        with pytest.raises(DomainError):
            VolkenbornParams(bad[0], bad[1], 2, 5)
    with pytest.raises(DomainError):
        VolkenbornParams(3, 4, 0, 5)
    assert VolkenbornParams(3, Fraction(5, 2), 2, 5).q == Fraction(5, 2)


def test_moment_zero_first_cutoff():
    # (1 + 4 + 16) / 3 = 7
    m = volkenborn_moment(0, VolkenbornParams(3, 4, 1, 4))
    assert m.residue() % 27 == 7


def test_moment_zero_is_a_geometric_sum():
    params = VolkenbornParams(5, 6, 3, 6)
    direct = Fraction(6**125 - 1, 5 * 125)
    assert volkenborn_moment(0, params) == PadicNum.from_rational(direct, 5, 6)


def test_moment_zero_converges_to_b0():
    params = VolkenbornParams(3, 4, 6, 8)
    b0 = bernoulli_value(0, params)
    assert (volkenborn_moment(0, params) - b0).valuation() >= 6 - moment_offset(0, 3)


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("n", range(5))
def test_moment_check_grid(p, n):
    r = moment_check(n, VolkenbornParams(p, 1 + p, 5, 12), range(1, 6))
    assert r.passed, r.detail
    assert r.detail["offset"] == moment_offset(n, p)


@pytest.mark.parametrize("n", range(4))
def test_consecutive_cutoffs_converge(n):
    p, M = 3, 12
    c = moment_offset(n, p)
    prev = volkenborn_moment(n, VolkenbornParams(p, 4, 1, M))
    for N in range(1, 6):
        nxt = volkenborn_moment(n, VolkenbornParams(p, 4, N + 1, M))
        assert (nxt - prev).valuation() >= N - c
        prev = nxt


def test_moment_check_rejects_bad_cutoffs():
    with pytest.raises(DomainError):
        moment_check(1, VolkenbornParams(3, 4, 2, 5), [0, 1])


@pytest.mark.parametrize("n", [0, 1, 3])
@pytest.mark.parametrize("q", [4, Fraction(7, 4)])
def test_shift_identity(n, q):
    assert shift_identity_check(n, VolkenbornParams(3, q, 4, 10)).passed


def test_other_base_rational_q():
    r = moment_check(2, VolkenbornParams(5, Fraction(11, 6), 5, 10), range(1, 6))
    assert r.passed, r.detail
