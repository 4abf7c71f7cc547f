"""Positive zeros of J_mu and of the mixed function c*J_mu(x) + x*J_mu'(x).

Zeros are located by a sign-change scan, refined by Newton steps that fall back
to bisection whenever they leave the bracket (see ``_kernels``).  Hat-zeros are
bracketed by consecutive zeros of J_mu: x*J'/J is decreasing between its poles,
so there is exactly one hat-zero in (j_{k-1}, j_k) when c + mu > 0 (j_0 = 0)
and in (j_k, j_{k+1}) otherwise.

Requests tighter than double precision are polished with mpmath.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Union

import mpmath

from . import _kernels
from .errors import ConvergenceError, DomainError

Real = Union[int, float, Fraction]

DEFAULT_PRECISION = 1e-12
# Below this the double-precision kernel is no longer trusted on its own.
DOUBLE_FLOOR = 1e-14


def _check_precision(precision: float) -> None:
    if not 0 < precision < 1:
        raise DomainError(f"precision must lie in (0, 1), got {precision}")


def _polish(mu: float, c: float | None, x0: float, precision: float):
    """Newton-polish a double-precision root with mpmath at enough digits."""
    dps = int(-math.log10(precision)) + 10
    with mpmath.workdps(dps):
        m = mpmath.mpf(mu)
        if c is None:
            f = lambda x: mpmath.besselj(m, x)
        else:
            cc = mpmath.mpf(c)
            f = lambda x: cc * mpmath.besselj(m, x) + x * mpmath.besselj(m, x, derivative=1)
        try:
            root = mpmath.findroot(f, mpmath.mpf(x0), tol=mpmath.mpf(precision) ** 2)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConvergenceError(f"polishing zero near {x0} failed: {exc}") from exc
        if abs(root - x0) > 1e-9 * abs(x0):
            raise ConvergenceError(f"polished zero {root} drifted from bracketed {x0}")
        return +root


@lru_cache(maxsize=4096)
def _zeros_upto(mu: float, c: float | None, count: int) -> tuple[float, ...]:
    try:
        zs = _kernels.bessel_zeros(mu, 0.0 if c is None else c, c is not None,
                                   count, 0.0, 1e-15)
    except ArithmeticError as exc:
        raise ConvergenceError(str(exc)) from exc
    if len(zs) != count:
        raise ConvergenceError(f"found {len(zs)} of {count} zeros for mu={mu}")
    return tuple(zs)


def _zero(mu: Real, c, k: int, precision: float):
    if mu < 0:
        raise DomainError(f"Bessel order must be >= 0, got {mu}")
    if not isinstance(k, int) or k < 1:
        raise DomainError(f"zero index must be a positive integer, got {k!r}")
    _check_precision(precision)
    muf = float(mu)
    cf = None if c is None else float(c)
    x = _zeros_upto(muf, cf, k)[k - 1]
    if precision < DOUBLE_FLOOR:
        return _polish(muf, cf, x, precision)
    return x


def bessel_j_zero(mu: Real, k: int, precision: float = DEFAULT_PRECISION):
    """k-th positive zero of J_mu.

    Returns a float, or an ``mpmath.mpf`` when ``precision`` is finer than
    double precision can deliver.
    """
    return _zero(mu, None, k, precision)


def bessel_jhat_zero(mu: Real, c: Real, k: int, precision: float = DEFAULT_PRECISION):
    """k-th positive zero of c*J_mu(x) + x*J_mu'(x); x = 0 is never counted."""
    return _zero(mu, c, k, precision)


def zeros_below(mu: Real, c: Real | None, xmax: float) -> list[float]:
    """All positive (hat-)zeros not exceeding ``xmax``, in double precision."""
    if mu < 0:
        raise DomainError(f"Bessel order must be >= 0, got {mu}")
    try:
        return _kernels.bessel_zeros(float(mu), 0.0 if c is None else float(c),
                                     c is not None, -1, float(xmax), 1e-15)
    except ArithmeticError as exc:
        raise ConvergenceError(str(exc)) from exc


def first_zero_lower_bound(mu: float, c: float | None) -> float:
    """A cheap lower bound for the first positive (hat-)zero.

    j_{mu,1} > mu.  For hat-zeros with c + mu <= 0 the first zero exceeds
    j_{mu,1}; with c >= 0 it exceeds mu; otherwise it exceeds sqrt(mu**2 - c**2).
    """
    if c is None or c + mu <= 0 or c >= 0:
        return mu
    return math.sqrt(max(mu * mu - c * c, 0.0))
