"""Analytic torsion and anomaly boundary terms of finite metric cones over spheres."""

__version__ = "0.1.0"

from ._kernels import BACKEND
from .anomaly import abm_even, abm_odd, t_ab_even_numeric, t_ab_odd
from .bessel import bessel_j_zero, bessel_jhat_zero
from .cone import abs_spectrum_families, enumerate_abs_spectrum, enumerate_rel_spectrum
from .errors import (
    BudgetExceededError,
    ConeTorsionError,
    ConvergenceError,
    DomainError,
    InconsistencyError,
    PoleError,
    UnsupportedCaseError,
)
from .exact import RationalPolynomial
from .sphere import SectionSpec
from .torsion import log_torsion_cone, log_torsion_sphere, torsion_report, volume_cone, volume_sphere
from .zeta import residue_U, riemann_zeta, zeta_U, zeta_U_at_zero, zeta_U_continued

__all__ = [
    "BACKEND", "SectionSpec", "RationalPolynomial",
    "abm_odd", "abm_even", "t_ab_odd", "t_ab_even_numeric",
    "bessel_j_zero", "bessel_jhat_zero",
    "abs_spectrum_families", "enumerate_abs_spectrum", "enumerate_rel_spectrum",
    "log_torsion_cone", "log_torsion_sphere", "torsion_report", "volume_cone", "volume_sphere",
    "residue_U", "riemann_zeta", "zeta_U", "zeta_U_at_zero", "zeta_U_continued",
    "ConeTorsionError", "DomainError", "PoleError", "ConvergenceError",
    "UnsupportedCaseError", "BudgetExceededError", "InconsistencyError",
]
