"""Volumes and the analytic torsion of cones over odd spheres.

log T_abs(C_l S^{2p-1}_{sin alpha}) = (1/2) log Vol(C_l S^{2p-1}_{sin alpha}) + A_BM(sin alpha),
and the relative torsion is its negative (Poincare duality, odd section).
Volumes are exact monomials coeff * pi^a * sin(alpha)^b * l^c; logs are taken last.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .anomaly import abm_odd
from .errors import DomainError, UnsupportedCaseError
from .exact import RationalLike, as_rational, double_factorial
from .sphere import SectionSpec, betti


@dataclass(frozen=True)
class VolumeExpr:
    """coeff * pi**pi_exp * sin(alpha)**sin_exp * l**l_exp, with integer exponents."""

    coeff: Fraction
    pi_exp: int = 0
    sin_exp: int = 0
    l_exp: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeff", as_rational(self.coeff))

    def __mul__(self, other):
        if not isinstance(other, VolumeExpr):
            other = VolumeExpr(as_rational(other))
        return VolumeExpr(self.coeff * other.coeff, self.pi_exp + other.pi_exp,
                          self.sin_exp + other.sin_exp, self.l_exp + other.l_exp)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, VolumeExpr):
            other = VolumeExpr(as_rational(other))
        if other.coeff == 0:
            raise ZeroDivisionError("division by a zero volume expression")
        return VolumeExpr(self.coeff / other.coeff, self.pi_exp - other.pi_exp,
                          self.sin_exp - other.sin_exp, self.l_exp - other.l_exp)

    def rational_part(self, sin_alpha: RationalLike, l: RationalLike) -> Fraction:
        """Everything except the power of pi, exactly."""
        return self.coeff * as_rational(sin_alpha) ** self.sin_exp * as_rational(l) ** self.l_exp

    def log_value(self, sin_alpha: RationalLike, l: RationalLike) -> float:
        r = self.rational_part(sin_alpha, l)
        if r <= 0:
            raise DomainError(f"volume must be positive, got rational part {r}")
        return (math.log(r.numerator) - math.log(r.denominator)) + self.pi_exp * math.log(math.pi)

    def value(self, sin_alpha: RationalLike, l: RationalLike) -> float:
        return math.exp(self.log_value(sin_alpha, l))

    def format(self) -> str:
        parts = [str(self.coeff)]
        for name, e in (("pi", self.pi_exp), ("sin", self.sin_exp), ("l", self.l_exp)):
            if e:
                parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)


def volume_sphere(m: int, sin_exp: int = 0, l_exp: int = 0) -> VolumeExpr:
    """Vol(S^m_b) = 2 pi^((m+1)/2) b^m / Gamma((m+1)/2) for the radius b = sin^a * l^c."""
    if m < 1:
        raise DomainError(f"sphere dimension must be >= 1, got {m}")
    if m % 2 == 1:
        n = (m + 1) // 2
        coeff, pi_exp = Fraction(2, math.factorial(n - 1)), n
    else:
        # Gamma(m/2 + 1/2) = (m-1)!! sqrt(pi) / 2^(m/2)
        coeff, pi_exp = Fraction(2 * 2 ** (m // 2), double_factorial(m - 1)), m // 2
    return VolumeExpr(coeff, pi_exp, m * sin_exp, m * l_exp)


def volume_cone(spec: SectionSpec) -> VolumeExpr:
    """Vol(C_l W) = l^(m+1)/(m+1) * Vol(W), W = S^m_{sin alpha}; exponents are symbolic in sin and l."""
    m = spec.m
    return VolumeExpr(Fraction(1, m + 1), 0, 0, m + 1) * volume_sphere(m, 1, 0)


def log_torsion_sphere(spec: SectionSpec) -> float:
    """log T(S^{2p-1}_{sin alpha}, l^2 g) = log Vol(S^{2p-1}_{l sin alpha})."""
    if spec.parity != "odd":
        raise UnsupportedCaseError("the sphere torsion formula is for odd-dimensional spheres")
    return volume_sphere(spec.m, 1, 1).log_value(spec.sin_alpha, spec.l)


def proposition_check(p: int) -> bool:
    """Vol(S^{2p-1}_{l sin alpha}) == Vol(C_l S^{2p-1}_{sin alpha}) * (2p / l), exactly.

    Only the degree-0 Betti number of the sphere enters the alternating q-sum,
    with weight log(l/(2p)).
    """
    if p < 1:
        raise DomainError(f"p must be >= 1, got {p}")
    spec = SectionSpec(p, "odd")
    r = [betti(spec, q) for q in range(p)]
    if r[0] != 1 or any(r[1:]):
        return False
    return volume_sphere(2 * p - 1, 1, 1) == volume_cone(spec) * VolumeExpr(2 * p, 0, 0, -1)


@dataclass(frozen=True)
class TorsionReport:
    p: int
    sin_alpha: Fraction
    l: Fraction
    bc: str
    half_log_vol: float
    abm: Fraction
    log_T: float


def torsion_report(spec: SectionSpec, bc: Literal["abs", "rel"] = "abs") -> TorsionReport:
    if spec.parity != "odd":
        raise UnsupportedCaseError(
            "the torsion of cones over even spheres needs the s=0 values of the A_{0,0,q} series; not supported")
    if bc not in ("abs", "rel"):
        raise DomainError(f"boundary condition must be 'abs' or 'rel', got {bc!r}")
    half = 0.5 * volume_cone(spec).log_value(spec.sin_alpha, spec.l)
    abm = abm_odd(spec.p)(spec.sin_alpha)
    val = half + float(abm)
    if bc == "rel":
        val = (-1) ** spec.m * val
    return TorsionReport(spec.p, spec.sin_alpha, spec.l, bc, half, abm, val)


def log_torsion_cone(spec: SectionSpec, bc: Literal["abs", "rel"] = "abs") -> float:
    return torsion_report(spec, bc).log_T
