import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conetorsion.anomaly import (
    abm_even,
    abm_odd,
    alt_power_sum,
    d_term,
    f_leading,
    identity_check,
    m_coeff_assembled,
    m_coeff_reduced,
    n_coeff,
    t_ab_even_numeric,
    t_ab_odd,
    t_ab_odd_assembled,
)
from conetorsion.errors import DomainError, UnsupportedCaseError
from conetorsion.exact import RationalPolynomial
from conetorsion.sphere import SectionSpec
from conetorsion.zeta import residue_U

F = Fraction


def test_abm_examples():
    assert abm_odd(1).poly == RationalPolynomial({1: F(1, 2)})
    assert abm_odd(2).poly == RationalPolynomial({1: F(3, 4), 3: F(-1, 12)})
    assert abm_odd(3).poly == RationalPolynomial({1: F(15, 16), 3: F(-5, 24), 5: F(3, 80)})
    assert abm_odd(2)(F(1, 2)) == F(35, 96)
    assert abm_even(1).poly == RationalPolynomial({2: F(1, 4)})
    assert abm_even(2).poly == RationalPolynomial({2: F(1, 4), 4: F(-1, 16)})


@pytest.mark.parametrize("p", range(1, 16))
def test_abm_shape(p):
    odd, even = abm_odd(p).poly, abm_even(p).poly
    assert odd.is_odd() and odd.degree == 2 * p - 1
    assert even.is_even() and even.degree == 2 * p
    assert abm_odd(p, "direct") == abm_odd(p) and abm_even(p, "direct") == abm_even(p)


def test_abm_bad_input():
    with pytest.raises(DomainError):
        abm_odd(0)
    with pytest.raises(DomainError):
        abm_odd(2, "other")


def test_n_coeff_examples():
    assert n_coeff(2, 0, 0) == F(3, 4)
    assert n_coeff(2, 1, 0) == F(-1, 4)
    assert n_coeff(2, 1, 1) == F(1, 6)
    with pytest.raises(DomainError):
        n_coeff(2, 0, 1)


@pytest.mark.parametrize("p", range(2, 13))
def test_M_equals_N(p):
    for k in range(p):
        for j in range(k + 1):
            assert m_coeff_reduced(p, k, j) == n_coeff(p, k, j)


def test_d_term_examples():
    assert [d_term(2, 0, k, t) for k in range(2) for t in range(2 - k)] == [F(1, 2), F(-1, 2), 1]
    assert [d_term(2, 1, k, t) for k in range(2) for t in range(2 - k)] == [-2, 0, 2]
    with pytest.raises(DomainError):
        d_term(2, 2, 0, 0)


@pytest.mark.parametrize("p", range(1, 7))
def test_d_term_matches_residue(p):
    spec = SectionSpec(p, "odd")
    for q in range(p):
        for k in range(p):
            poly = RationalPolynomial({2 * (k + t) + 1: d_term(p, q, k, t) for t in range(p - k)})
            assert poly == residue_U(spec, q, k)


def test_f_leading():
    assert f_leading(3, 0, 0).leading == 2 and f_leading(3, 2, 0).leading == 1
    lead = f_leading(3, 0, 1)
    assert lead.leading == F(2, 3) * 4 and not lead.exact and lead.constant_tail_shared
    with pytest.raises(DomainError):
        f_leading(3, 3, 0)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 7), st.dictionaries(st.integers(0, 6), st.fractions(max_denominator=50), max_size=4))
def test_assembled_independent_of_tail(p, tail):
    assert t_ab_odd_assembled(p, tail) == t_ab_odd(p) == abm_odd(p)


@pytest.mark.parametrize("p", range(2, 13))
def test_t_ab_equals_abm(p):
    assert t_ab_odd(p).poly == abm_odd(p).poly


def test_t_ab_p1_unsupported():
    with pytest.raises(UnsupportedCaseError):
        t_ab_odd(1)


@pytest.mark.parametrize("n", range(1, 20))
def test_ida1(n):
    assert identity_check("ida1", n=n)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 10), st.integers(0, 4), st.fractions(min_value=-5, max_value=5, max_denominator=20))
def test_idA2_idA3_random_alpha(n, extra, alpha):
    assert identity_check("idA2", n=n, alpha=alpha)
    assert identity_check("idA3", n=n, N=n + extra, alpha=alpha)


@given(st.integers(0, 30).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
def test_idB(nk):
    n, k = nk
    assert identity_check("idB", n=n, k=k)


def test_identity_bad_input():
    with pytest.raises(DomainError):
        identity_check("idA3", n=3, N=2, alpha=0)
    with pytest.raises(DomainError):
        identity_check("nope", n=1)
    with pytest.raises(DomainError):
        identity_check("idA2", n=1)


def test_alt_power_sum_examples():
    assert alt_power_sum(2, 0) == F(-1, 2)
    assert alt_power_sum(2, 1) == F(1, 2)
    assert alt_power_sum(3, 2) == F(1, 2)
    assert alt_power_sum(3, 1) == 0


@pytest.mark.parametrize("p", range(2, 10))
def test_alt_power_sum_closed_forms(p):
    for m in range(1, p - 1):
        assert alt_power_sum(p, m) == 0
    assert alt_power_sum(p, p - 1) == F(1, 2)
    # m = 0: the half range includes the middle term, so it is half of that term
    assert alt_power_sum(p, 0) == F((-1) ** (p - 1) * math.comb(2 * p - 2, p - 1), 2 * math.factorial(2 * p - 2))


@pytest.mark.parametrize("sin", [F(1), F(1, 2), F(1, 3)])
def test_even_p1_numeric(sin):
    val = t_ab_even_numeric(SectionSpec.from_sin_alpha(1, "even", sin))
    assert abs(val - float(sin) ** 2 / 4) < 1e-8
    assert abs(val - float(abm_even(1)(sin))) < 1e-8


def test_even_numeric_unsupported():
    with pytest.raises(UnsupportedCaseError):
        t_ab_even_numeric(SectionSpec(2, "even"))
    with pytest.raises(DomainError):
        t_ab_even_numeric(SectionSpec(1, "odd"))
