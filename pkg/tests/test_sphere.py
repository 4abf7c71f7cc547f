from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conetorsion.errors import DomainError
from conetorsion.exact import elementary_symmetric_all
from conetorsion.sphere import (
    SectionSpec,
    alpha,
    betti,
    coexact_eigenvalue,
    coexact_multiplicity,
    coexact_series,
    d_vector,
    f_poly,
    harmonic_cone_dims,
    spectrum_csv,
    spectrum_table,
)


def test_spec_validation():
    with pytest.raises(DomainError):
        SectionSpec(0, "odd")
    with pytest.raises(DomainError):
        SectionSpec(1, "middle")
    with pytest.raises(DomainError):
        SectionSpec.from_sin_alpha(1, "odd", Fraction(3, 2))
    with pytest.raises(DomainError):
        SectionSpec(1, "odd", l=Fraction(0))
    s = SectionSpec.from_sin_alpha(2, "odd", "1/2", 3)
    assert s.nu == 2 and s.l == 3 and s.m == 3 and s.sin_alpha == Fraction(1, 2)


def test_alpha_examples():
    assert alpha(SectionSpec(2, "odd"), 0) == -1
    assert alpha(SectionSpec(1, "even"), 0) == Fraction(-1, 2)
    with pytest.raises(DomainError):
        alpha(SectionSpec(1, "odd"), 2)


def test_table_examples():
    odd2 = SectionSpec(2, "odd")
    assert coexact_eigenvalue(odd2, 1, 1) == 4
    assert coexact_eigenvalue(odd2, 0, 1) == 3
    assert coexact_multiplicity(odd2, 1, 1) == 6
    assert coexact_multiplicity(odd2, 0, 1) == 4
    even1 = SectionSpec(1, "even")
    assert coexact_eigenvalue(even1, 0, 1) == 6
    assert coexact_multiplicity(even1, 0, 1) == 5
    with pytest.raises(DomainError):
        coexact_eigenvalue(odd2, 2, 1)
    with pytest.raises(DomainError):
        coexact_multiplicity(odd2, 0, 0)


def test_circle_rows():
    s = SectionSpec(1, "odd")
    assert [coexact_eigenvalue(s, 0, n) for n in (1, 2, 3)] == [1, 4, 9]
    assert [coexact_multiplicity(s, 0, n) for n in (1, 2, 3)] == [2, 2, 2]


def test_round_two_sphere():
    # coexact 0-forms on S^2: eigenvalues l(l+1), l >= 2 as printed, mult 2l+1
    s = SectionSpec(1, "even")
    assert [coexact_eigenvalue(s, 0, n) for n in (1, 2)] == [6, 12]
    assert [coexact_multiplicity(s, 0, n) for n in (1, 2)] == [5, 7]


@given(st.integers(1, 7), st.sampled_from(["odd", "even"]), st.integers(1, 12), st.data())
def test_series_matches_table(p, parity, n, data):
    spec = SectionSpec(p, parity)
    q = data.draw(st.integers(0, p - 1))
    ser = coexact_series(spec, q)
    assert ser.eigenvalue(n) == coexact_eigenvalue(spec, q, n)
    assert ser.multiplicity(n) == coexact_multiplicity(spec, q, n)
    assert ser.alpha == alpha(spec, q)


@given(st.integers(1, 7), st.sampled_from(["odd", "even"]), st.integers(1, 12), st.data())
def test_mu_is_rational_at_nu_one(p, parity, n, data):
    # lambda + alpha^2 = (n + center)^2 for round spheres of radius one
    spec = SectionSpec(p, parity)
    q = data.draw(st.integers(0, spec.m - 1))
    ser = coexact_series(spec, q)
    assert ser.eigenvalue(n) + ser.alpha**2 == (n + ser.center) ** 2
    assert ser.multiplicity_in_M()(n + ser.center) == ser.multiplicity(n)


def test_duality_rows():
    spec = SectionSpec(3, "odd")
    for q in range(spec.m):
        dual = coexact_series(spec, spec.m - 1 - q)
        ser = coexact_series(spec, q)
        assert ser.mult_offsets == dual.mult_offsets
        assert ser.alpha == -dual.alpha


def test_d_vector_examples():
    assert d_vector(2, 0) == (1,)
    assert d_vector(2, 1) == (-1,)
    assert d_vector(3, 2) == (-4, -1)
    with pytest.raises(DomainError):
        d_vector(2, 2)


def test_f_poly_example():
    f = f_poly(2, 1)
    assert f.coeffs == {0: -1, 2: 2}
    assert f(-1) == 1


@given(st.integers(1, 10), st.data())
def test_f_at_alpha_is_symmetric_function_of_d(p, data):
    q = data.draw(st.integers(0, p - 1))
    h = data.draw(st.integers(0, p - 1))
    a = alpha(SectionSpec(p, "odd"), q)
    assert f_poly(p, h)(a) == elementary_symmetric_all(d_vector(p, q))[h]


@given(st.integers(2, 9), st.data())
def test_multiplicity_expands_in_d(p, data):
    # m_{q,n} = c_q * sum_j e_{p-1-j}(d^q) lambda_{q,n}^j
    q = data.draw(st.integers(0, p - 1))
    n = data.draw(st.integers(1, 20))
    spec = SectionSpec(p, "odd")
    ser = coexact_series(spec, q)
    e = elementary_symmetric_all(d_vector(p, q))
    lam = ser.eigenvalue(n)
    val = ser.coeff * sum(e[p - 1 - j] * lam**j for j in range(p))
    assert val == ser.multiplicity(n)


def test_betti_and_harmonic():
    s = SectionSpec(2, "odd")
    assert [betti(s, q) for q in range(4)] == [1, 0, 0, 1]
    assert [harmonic_cone_dims(s, q, "abs") for q in range(5)] == [1, 0, 0, 0, 0]
    assert [harmonic_cone_dims(s, q, "rel") for q in range(5)] == [0, 0, 0, 0, 1]
    with pytest.raises(DomainError):
        harmonic_cone_dims(s, 0, "mixed")


def test_spectrum_csv():
    rows = spectrum_table(SectionSpec(2, "odd", Fraction(2)), 0, 2)
    assert rows[0].mu_sq == 4 * 3 + 1
    text = spectrum_csv(rows)
    assert text.splitlines() == ["q,n,lambda_over_nu_sq,mult,alpha_q", "0,1,3,4,-1", "0,2,8,9,-1"]
