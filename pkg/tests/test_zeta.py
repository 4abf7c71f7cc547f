import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from conetorsion.errors import DomainError, InconsistencyError, PoleError, UnsupportedCaseError
from conetorsion.exact import RationalPolynomial
from conetorsion.sphere import SectionSpec, coexact_series
from conetorsion.zeta import (
    ZetaClosedForm,
    convergence_abscissa,
    hurwitz_zeta,
    residue_numeric,
    residue_U,
    residue_U_expansion,
    residue_U_top,
    riemann_zeta,
    z_shifted,
    z_shifted_excluded,
    z_shifted_start,
    zeta_tc_at_zero,
    zeta_tc_at_zero_hurwitz,
    zeta_U,
    zeta_U_at_zero,
    zeta_U_at_zero_assembled,
    zeta_U_continued,
    zeta_U_top_closed_form,
)


def test_riemann_examples():
    assert riemann_zeta(2) == pytest.approx(math.pi**2 / 6, rel=1e-15)
    assert riemann_zeta(-1) == pytest.approx(-1 / 12, rel=1e-15)
    assert riemann_zeta(3) == pytest.approx(1.2020569031595942, rel=1e-15)
    with pytest.raises(PoleError):
        riemann_zeta(1)


@settings(max_examples=40, deadline=None)
# mpmath.zeta itself fails for subnormal s, so keep |s| away from 0 by more than 1e-100
@given(st.floats(-10, 30).filter(lambda s: abs(s - 1) > 1e-3 and (s == 0 or abs(s) > 1e-100)))
def test_riemann_against_mpmath(s):
    assert riemann_zeta(s) == pytest.approx(float(mpmath.zeta(s)), rel=1e-12, abs=1e-14)


@settings(max_examples=40, deadline=None)
@given(st.floats(-6, 20).filter(lambda s: abs(s - 1) > 1e-3 and (s == 0 or abs(s) > 1e-100)),
       st.fractions(min_value=Fraction(1, 10), max_value=12, max_denominator=10))
def test_hurwitz_against_mpmath(s, a):
    ref = float(mpmath.zeta(s, mpmath.mpf(a.numerator) / a.denominator))
    assert hurwitz_zeta(s, a) == pytest.approx(ref, rel=1e-11, abs=1e-13)


def test_hurwitz_near_zero():
    # zeta_H(0, a) = 1/2 - a; also for subnormal s where the mpmath oracle breaks
    assert hurwitz_zeta(0.0, 7) == pytest.approx(-6.5, rel=1e-15)
    assert hurwitz_zeta(-3.8e-247, 7) == pytest.approx(-6.5, rel=1e-15)


def test_hurwitz_domain():
    with pytest.raises(DomainError):
        hurwitz_zeta(2, 0)


def test_z_shifted_examples():
    assert z_shifted(2, 0) == pytest.approx(math.pi**4 / 90, rel=1e-15)
    assert z_shifted(2, Fraction(1, 2)) == pytest.approx(math.pi**2 - 8, rel=1e-14)
    direct = math.fsum((n * n - 1) ** -3.0 for n in range(2, 200000))
    assert z_shifted(3, 1) == pytest.approx(direct, rel=1e-13)
    assert z_shifted(3, 1) == pytest.approx(0.0393997249319, rel=1e-11)
    assert z_shifted_start(1) == 2 and z_shifted_excluded(Fraction(5, 2)) == [1, 2]
    with pytest.raises(DomainError):
        z_shifted(0.5, 1)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.8, 6), st.fractions(min_value=0, max_value=6, max_denominator=4))
def test_z_shifted_against_brute_force(s, a):
    a2 = mpmath.mpf(a.numerator) ** 2 / a.denominator**2
    n0 = z_shifted_start(a)
    with mpmath.workdps(30):
        f = lambda x: (x * x - a2) ** (-s)
        N = 2000
        ref = mpmath.fsum(f(n) for n in range(n0, N)) + mpmath.quad(f, [N, mpmath.inf]) + f(N) / 2 - mpmath.diff(f, N) / 12
    assert z_shifted(s, a) == pytest.approx(float(ref), rel=1e-11)


def test_closed_form_examples_and_json():
    assert zeta_U_top_closed_form(1).to_json_obj() == {"prefactor": "2", "nu_power": "-s", "terms": [{"shift": 0, "coeff": "1"}]}
    cf2 = zeta_U_top_closed_form(2)
    assert cf2.terms == ((0, -1), (2, 1)) and cf2.prefactor == 2
    cf3 = zeta_U_top_closed_form(3)
    assert cf3.prefactor == Fraction(1, 2) and dict(cf3.terms) == {0: 4, 2: -5, 4: 1}
    assert ZetaClosedForm.from_json_obj(cf3.to_json_obj()) == cf3
    with pytest.raises(PoleError):
        cf3.evaluate(5 + 1e-8)
    with pytest.raises(DomainError):
        ZetaClosedForm(Fraction(1), ((0, Fraction(1)), (0, Fraction(2))))


def test_zeta_U_examples():
    assert zeta_U(SectionSpec(2, "odd"), 0, 6) == pytest.approx(riemann_zeta(4) - 1, rel=1e-12)
    assert zeta_U(SectionSpec(2, "odd"), 1, 6) == pytest.approx(2 * (riemann_zeta(4) - riemann_zeta(6)), rel=1e-12)
    assert zeta_U(SectionSpec(1, "odd", Fraction(2)), 0, 4) == pytest.approx(2 * 2**-4 * riemann_zeta(4), rel=1e-12)
    with pytest.raises(DomainError):
        zeta_U(SectionSpec(2, "odd"), 0, 3)


@pytest.mark.parametrize("p", [2, 3, 4])
@pytest.mark.parametrize("nu", [1, 2, Fraction(5, 3)])
def test_closed_form_against_direct(p, nu):
    s = 2 * p + 2
    spec = SectionSpec(p, "odd", Fraction(nu))
    cf = zeta_U_top_closed_form(p)
    # independent evaluation of the closed form with mpmath's zeta
    ref = float(cf.prefactor) * float(nu) ** -s * sum(float(c) * float(mpmath.zeta(s - sh)) for sh, c in cf.terms)
    assert abs(zeta_U(spec, p - 1, s) - ref) < 1e-8 * max(1, abs(ref))
    assert cf.evaluate(s, nu) == pytest.approx(ref, rel=1e-13)


@pytest.mark.parametrize("parity", ["odd", "even"])
@pytest.mark.parametrize("p", [1, 2, 3])
def test_continuation_matches_direct(parity, p):
    spec = SectionSpec(p, parity, Fraction(3, 2))
    for q in range(spec.m):
        s = convergence_abscissa(spec, q) + 1.5
        assert float(zeta_U_continued(spec, q, s)) == pytest.approx(zeta_U(spec, q, s), rel=1e-11)


def test_continuation_poles():
    spec = SectionSpec(2, "odd", Fraction(2))
    with pytest.raises(PoleError):
        zeta_U_continued(spec, 0, 3)
    with pytest.raises(PoleError):
        zeta_U_continued(spec, 0, 1 + 1e-7)
    # s = -1 is a pole only when b != 0
    zeta_U_continued(SectionSpec(2, "odd"), 1, -1)


def test_residue_examples():
    s2 = SectionSpec(2, "odd")
    assert residue_U(s2, 1, 1) == RationalPolynomial({3: 2})
    assert residue_U(s2, 1, 0) == RationalPolynomial({1: -2})
    assert residue_U(s2, 0, 1) == RationalPolynomial({3: 1})
    with pytest.raises(UnsupportedCaseError):
        residue_U(SectionSpec(2, "even"), 0, 0)
    with pytest.raises(DomainError):
        residue_U(s2, 2, 0)


@pytest.mark.parametrize("p", range(1, 8))
def test_residue_routes_agree(p):
    spec = SectionSpec(p, "odd")
    for q in range(p):
        for k in range(p):
            r = residue_U(spec, q, k)
            assert r == residue_U_expansion(spec, q, k)
            assert set(r.exponents()) <= set(range(2 * k + 1, 2 * p, 2))
        assert residue_U(spec, p - 1, q) == residue_U_top(p, q)


def test_residue_at_nu_one_is_M_coefficient():
    # at nu = 1, Res_{s=2k+1} = coefficient of M^(2k) in the multiplicity
    for p in range(1, 7):
        spec = SectionSpec(p, "odd")
        for q in range(p):
            P = coexact_series(spec, q).multiplicity_in_M()
            for k in range(p):
                assert residue_U(spec, q, k)(1) == P.coeff(2 * k)


@pytest.mark.parametrize("nu", [1, 3])
def test_numeric_residues(nu):
    spec = SectionSpec(2, "odd", Fraction(nu))
    for q in range(2):
        for k in range(2):
            exact = float(residue_U(spec, q, k)(Fraction(1, nu)))
            assert residue_numeric(spec, q, 2 * k + 1) == pytest.approx(exact, abs=1e-9)


def test_tc_examples():
    assert zeta_tc_at_zero(1, 0) == Fraction(-3, 2)
    assert zeta_tc_at_zero(2, 1) == 5
    assert zeta_tc_at_zero(1, 1) == Fraction(1, 2)
    assert zeta_tc_at_zero(0, 0) == Fraction(-1, 2)
    with pytest.raises(DomainError):
        zeta_tc_at_zero(-1, 0)


@given(st.integers(0, 12), st.integers(0, 10))
def test_tc_matches_hurwitz_route(t, c):
    assert zeta_tc_at_zero(t, c) == zeta_tc_at_zero_hurwitz(t, c)


def test_zeta_at_zero_examples():
    assert zeta_U_at_zero(2, 0) == -1
    assert zeta_U_at_zero(2, 1) == 1
    assert zeta_U_at_zero(5, 3) == 1


@pytest.mark.parametrize("p", range(1, 11))
def test_zeta_at_zero_all(p):
    for q in range(p):
        assert zeta_U_at_zero_assembled(p, q) == (-1) ** (q + 1)


@pytest.mark.parametrize("nu", [1, 2, Fraction(7, 3)])
def test_zeta_at_zero_numeric(nu):
    for p in (2, 3):
        spec = SectionSpec(p, "odd", Fraction(nu))
        for q in range(p):
            assert float(zeta_U_continued(spec, q, 0)) == pytest.approx((-1) ** (q + 1), abs=1e-12)


def test_zeta_at_zero_inconsistency_error(monkeypatch):
    import conetorsion.zeta as z
    monkeypatch.setattr(z, "zeta_U_at_zero_assembled", lambda p, q: Fraction(0))
    with pytest.raises(InconsistencyError):
        z.zeta_U_at_zero(2, 0)
