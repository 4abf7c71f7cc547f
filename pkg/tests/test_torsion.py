import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conetorsion.errors import DomainError, UnsupportedCaseError
from conetorsion.sphere import SectionSpec
from conetorsion.torsion import (
    VolumeExpr,
    log_torsion_cone,
    log_torsion_sphere,
    proposition_check,
    torsion_report,
    volume_cone,
    volume_sphere,
)

sins = st.fractions(min_value=Fraction(1, 50), max_value=1, max_denominator=50).filter(lambda x: x > 0)
lengths = st.fractions(min_value=Fraction(1, 20), max_value=20, max_denominator=20).filter(lambda x: x > 0)


def test_volume_examples():
    assert volume_sphere(1) == VolumeExpr(2, 1)
    assert volume_sphere(2) == VolumeExpr(4, 1)
    assert volume_sphere(3) == VolumeExpr(2, 2)
    assert volume_sphere(4) == VolumeExpr(Fraction(8, 3), 2)
    assert volume_sphere(3, 1, 1).value(Fraction(1, 2), 2) == pytest.approx(2 * math.pi**2)
    # cone over the unit circle is the unit disc
    assert volume_cone(SectionSpec(1, "odd")).value(1, 1) == pytest.approx(math.pi)
    # cone over the unit 2-sphere is the unit ball
    assert volume_cone(SectionSpec(1, "even")).value(1, 1) == pytest.approx(4 * math.pi / 3)
    with pytest.raises(DomainError):
        volume_sphere(0)


@pytest.mark.parametrize("m", range(1, 12))
def test_volume_sphere_against_gamma(m):
    ref = 2 * math.pi ** ((m + 1) / 2) / math.gamma((m + 1) / 2)
    assert volume_sphere(m).value(1, 1) == pytest.approx(ref, rel=1e-14)


def test_volume_expr_arithmetic():
    v = VolumeExpr(Fraction(3, 2), 1, 2, 3)
    assert (v * 2) / v == VolumeExpr(2)
    assert v.format() == "3/2*pi*sin^2*l^3"
    with pytest.raises(ZeroDivisionError):
        v / VolumeExpr(0)
    with pytest.raises(DomainError):
        VolumeExpr(-1).log_value(1, 1)


@pytest.mark.parametrize("p", range(1, 11))
def test_proposition(p):
    assert proposition_check(p)


def test_torsion_number():
    rep = torsion_report(SectionSpec.from_sin_alpha(2, "odd", Fraction(1, 2)))
    assert rep.abm == Fraction(35, 96)
    assert rep.log_T == pytest.approx(0.5 * math.log(math.pi**2 / 16) + 35 / 96, abs=1e-12)
    assert rep.log_T == pytest.approx(0.1230188580628, abs=1e-12)


def test_torsion_p1_flat_disc():
    # sin alpha = 1, l = 1: the unit disc, (1/2) log pi + 1/2
    assert log_torsion_cone(SectionSpec(1, "odd")) == pytest.approx(0.5 * math.log(math.pi) + 0.5, abs=1e-14)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), sins, lengths)
def test_duality_sum_vanishes(p, sin, l):
    spec = SectionSpec.from_sin_alpha(p, "odd", sin, l)
    assert log_torsion_cone(spec, "abs") + log_torsion_cone(spec, "rel") == pytest.approx(0, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), sins, lengths)
def test_length_scaling(p, sin, l):
    # the cone has dimension 2p, so doubling l adds (1/2) * 2p * log 2
    a = log_torsion_cone(SectionSpec.from_sin_alpha(p, "odd", sin, l))
    b = log_torsion_cone(SectionSpec.from_sin_alpha(p, "odd", sin, 2 * l))
    assert b - a == pytest.approx(p * math.log(2), abs=1e-12)


def test_sphere_torsion():
    spec = SectionSpec.from_sin_alpha(2, "odd", Fraction(1, 2), 2)
    assert log_torsion_sphere(spec) == pytest.approx(math.log(2 * math.pi**2), abs=1e-14)
    with pytest.raises(UnsupportedCaseError):
        log_torsion_sphere(SectionSpec(1, "even"))


def test_even_parity_unsupported():
    with pytest.raises(UnsupportedCaseError):
        torsion_report(SectionSpec(1, "even"))
    with pytest.raises(DomainError):
        torsion_report(SectionSpec(1, "odd"), "mixed")
