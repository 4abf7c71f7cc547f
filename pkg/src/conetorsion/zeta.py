"""Riemann/Hurwitz zeta and the spectral zeta functions of the coexact sphere spectrum.

For a coexact row put M = n + center.  Then mu**2 = nu**2 (M**2 - b) with
b = half_gap**2 - alpha**2 / nu**2, and the multiplicity is a polynomial
sum_i P_i M**i.  Binomially expanding (M**2 - b)**(-s/2) for M above sqrt(|b|)
gives the meromorphic continuation

    zeta(s, U) = nu**(-s) sum_i P_i sum_r C(-s/2, r) (-b)**r zeta_H(s + 2r - i, M0)
                 + (finitely many terms with M < M0),

with simple poles at s = 1 + i - 2r.  Hurwitz zeta is evaluated by
Euler-Maclaurin in mpmath at roughly twice the requested digits.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
from scipy import integrate

from . import _kernels
from .errors import DomainError, PoleError, UnsupportedCaseError, InconsistencyError
from .exact import (
    RationalPolynomial,
    elementary_symmetric_all,
    format_rational,
    hurwitz_at_nonpositive,
    rational_binomial,
)
from .sphere import CoexactSeries, SectionSpec, coexact_series, d_vector

DEFAULT_PRECISION = 1e-12
POLE_TOL = 1e-6
EM_TERMS = 50
EM_CORRECTIONS = 10
DIRECT_TERMS = 100_000


def _dps(precision: float) -> int:
    if not 0 < precision < 1:
        raise DomainError(f"precision must lie in (0, 1), got {precision}")
    return max(2 * math.ceil(-math.log10(precision)), 20) + 10


@lru_cache(maxsize=64)
def _bernoulli_weights(dps: int, count: int) -> tuple:
    """B_{2k}/(2k)! for k = 1..count at the given working precision."""
    with mpmath.workdps(dps):
        return tuple(mpmath.bernoulli(2 * k) / mpmath.factorial(2 * k) for k in range(1, count + 1))


def _hurwitz_em(s, a, dps: int):
    """zeta_H(s, a) for a > 0, s != 1, by Euler-Maclaurin; adaptive in the number of direct terms."""
    eps = mpmath.mpf(10) ** (-dps + 5)
    n_direct = EM_TERMS
    while True:
        # for s < 0 the direct terms grow like x**(-s); carry enough digits for the cancellation
        extra = max(0, math.ceil((1 - float(s)) * math.log10(n_direct + float(a)))) + 5
        weights = _bernoulli_weights(dps + extra, EM_CORRECTIONS)
        with mpmath.workdps(dps + extra):
            total = mpmath.fsum((n + a) ** (-s) for n in range(n_direct))
            x = n_direct + a
            total += x ** (1 - s) / (s - 1) + x ** (-s) / 2
            rising = s
            last = mpmath.mpf(0)
            for k, w in enumerate(weights, start=1):
                last = w * rising * x ** (-s - 2 * k + 1)
                total += last
                rising *= (s + 2 * k - 1) * (s + 2 * k)
        if abs(last) <= eps * max(abs(total), 1) or n_direct >= 20000:
            return +total
        n_direct *= 4


def hurwitz_zeta(s: float, a, precision: float = DEFAULT_PRECISION) -> float:
    """zeta_H(s, a) = sum_{n>=0} (n+a)**(-s), continued to all real s != 1."""
    if a <= 0:
        raise DomainError(f"Hurwitz parameter must be positive, got {a}")
    if s == 1:
        raise PoleError("zeta_H(s, a) has a pole at s = 1")
    dps = _dps(precision)
    with mpmath.workdps(dps):
        return float(_hurwitz_em(mpmath.mpf(s), _mp(a), dps))


def riemann_zeta(s: float, precision: float = DEFAULT_PRECISION) -> float:
    if s == 1:
        raise PoleError("the Riemann zeta function has a pole at s = 1")
    return hurwitz_zeta(s, 1, precision)


def _mp(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


# ---------------------------------------------------------------------------
# z(s, a) = sum (n**2 - a**2)**(-s)

def z_shifted_start(a) -> int:
    """First summation index of z(s, a); terms with n <= a are excluded."""
    a = Fraction(a)
    if a < 0:
        raise DomainError(f"shift must be >= 0, got {a}")
    return math.floor(a) + 1


def z_shifted_excluded(a) -> list[int]:
    """The indices 1 <= n <= a left out of z(s, a) (zero or negative base)."""
    return list(range(1, z_shifted_start(a)))


def z_shifted(s: float, a, precision: float = DEFAULT_PRECISION) -> float:
    """sum_{n > a} (n**2 - a**2)**(-s) for real s > 1/2 and rational a >= 0."""
    if not 2 * s > 1:
        raise DomainError(f"z(s, a) diverges for s = {s} <= 1/2")
    n0 = z_shifted_start(a)
    dps = _dps(precision)
    with mpmath.workdps(dps):
        s_ = mpmath.mpf(s)
        a2 = _mp(Fraction(a)) ** 2
        # Direct terms until a/n <= 1/4, then expand (1 - a^2/n^2)^(-s).
        start = max(n0, 4 * n0, 8)
        total = mpmath.fsum((n * n - a2) ** (-s_) for n in range(n0, start))
        if a2 == 0:
            return float(total + _hurwitz_em(2 * s_, mpmath.mpf(start), dps))
        eps = mpmath.mpf(10) ** (-dps + 5)
        coef = mpmath.mpf(1)
        k = 0
        while True:
            term = coef * _hurwitz_em(2 * s_ + 2 * k, mpmath.mpf(start), dps)
            total += term
            if abs(term) < eps * abs(total):
                break
            coef *= (s_ + k) / (k + 1) * a2
            k += 1
        return float(total)


# ---------------------------------------------------------------------------
# closed form of zeta(s, U_{p-1}) on odd spheres

@dataclass(frozen=True)
class ZetaClosedForm:
    """prefactor * nu**(-s) * sum_j coeff_j * zeta_R(s - shift_j)."""

    prefactor: Fraction
    terms: tuple[tuple[int, Fraction], ...]
    nu_power: str = "-s"

    def __post_init__(self):
        shifts = [sh for sh, _ in self.terms]
        if len(set(shifts)) != len(shifts) or any(c == 0 for _, c in self.terms):
            raise DomainError("closed form terms need distinct shifts and nonzero coefficients")

    def poles(self) -> list[int]:
        return sorted(1 + sh for sh, _ in self.terms)

    def evaluate(self, s: float, nu=1, precision: float = DEFAULT_PRECISION) -> float:
        for pole in self.poles():
            if abs(s - pole) < POLE_TOL:
                raise PoleError(f"closed form has a pole at s = {pole}")
        total = math.fsum(float(c) * riemann_zeta(s - sh, precision) for sh, c in self.terms)
        return float(self.prefactor) * float(nu) ** (-s) * total

    def to_json_obj(self) -> dict:
        return {
            "prefactor": format_rational(self.prefactor),
            "nu_power": self.nu_power,
            "terms": [{"shift": sh, "coeff": format_rational(c)} for sh, c in self.terms],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: dict) -> "ZetaClosedForm":
        return cls(Fraction(obj["prefactor"]),
                   tuple((int(t["shift"]), Fraction(t["coeff"])) for t in obj["terms"]),
                   obj.get("nu_power", "-s"))


def zeta_U_top_closed_form(p: int) -> ZetaClosedForm:
    """zeta(s, U_{p-1}) on S^{2p-1}: 2 nu^-s/(p-1)!^2 sum_j e_{p-1-j}(d^{p-1}) zeta_R(s-2j)."""
    if p < 1:
        raise DomainError(f"p must be >= 1, got {p}")
    e = elementary_symmetric_all(d_vector(p, p - 1))
    terms = tuple((2 * j, e[p - 1 - j]) for j in range(p) if e[p - 1 - j])
    return ZetaClosedForm(Fraction(2, math.factorial(p - 1) ** 2), terms)


# ---------------------------------------------------------------------------
# zeta(s, U_q) for a coexact row

@dataclass(frozen=True)
class _RowData:
    series: CoexactSeries
    nu: Fraction
    P: RationalPolynomial
    b: Fraction

    @property
    def degree(self) -> int:
        return self.P.degree


def _row(spec: SectionSpec, q: int) -> _RowData:
    ser = coexact_series(spec, q)
    b = ser.half_gap**2 - ser.alpha**2 / spec.nu**2
    return _RowData(ser, spec.nu, ser.multiplicity_in_M(), b)


def convergence_abscissa(spec: SectionSpec, q: int) -> int:
    """zeta(s, U_q) converges absolutely for s greater than this."""
    return _row(spec, q).degree + 1


def _check_poles(row: _RowData, s: float) -> None:
    # Possible poles are 1 + i - 2r; for nu = 1 (b = 0) only r = 0 survives.
    for i in row.P.exponents():
        r = round((1 + i - s) / 2)
        if r < 0 or (r > 0 and row.b == 0):
            continue
        pole = 1 + i - 2 * r
        if abs(s - pole) < POLE_TOL and not _removable(s, r):
            raise PoleError(f"zeta(s, U) has a pole at s = {pole} (|s - pole| < {POLE_TOL})")


def _removable(s: float, r: int) -> bool:
    # C(-s/2, r) vanishes exactly at s = 0, -2, ..., -2(r-1)
    return s == int(s) and s <= 0 and int(s) % 2 == 0 and r > -int(s) // 2


def zeta_U(spec: SectionSpec, q: int, s: float, precision: float = DEFAULT_PRECISION) -> float:
    """sum_n m_{q,n} mu_{q,n}**(-s) for s in the convergence region, by direct summation.

    The first ``DIRECT_TERMS`` terms go through the compiled kernel; the rest
    are replaced by the Euler-Maclaurin tail integral + f(N)/2 - f'(N)/12.
    Outside the convergence region use :func:`zeta_U_continued`.
    """
    row = _row(spec, q)
    if not s > row.degree + 1:
        raise DomainError(f"direct sum needs s > {row.degree + 1}, got {s}; use zeta_U_continued")
    ser = row.series
    e1, e2 = (float(x) for x in ser.eig_offsets)
    nu_sq = float(spec.nu**2)
    a_sq = float(ser.alpha**2)
    offs = [float(r) for r in ser.mult_offsets]
    coeff = float(ser.coeff)
    N = DIRECT_TERMS
    head = _kernels.power_sum(coeff, offs, e1, e2, nu_sq, a_sq, s, 1, N)

    def f(x):
        m = coeff * math.prod(x + r for r in offs)
        return m * (nu_sq * (x + e1) * (x + e2) + a_sq) ** (-s / 2)

    def df(x):
        mu_sq = nu_sq * (x + e1) * (x + e2) + a_sq
        log_d = sum(1 / (x + r) for r in offs) - (s / 2) * nu_sq * (2 * x + e1 + e2) / mu_sq
        return f(x) * log_d

    # x = N/t maps [N, inf) onto (0, 1]; quad on the infinite range loses digits here
    tail, _ = integrate.quad(lambda t: f(N / t) * N / (t * t) if t > 0 else 0.0, 0.0, 1.0,
                             epsabs=0.0, epsrel=1e-13, limit=200)
    return head + tail + f(N) / 2 - df(N) / 12


def zeta_U_continued(spec: SectionSpec, q: int, s, precision: float = DEFAULT_PRECISION):
    """Meromorphic continuation of zeta(s, U_q); returns an mpmath mpf."""
    row = _row(spec, q)
    _check_poles(row, float(s))
    dps = _dps(precision)
    with mpmath.workdps(dps):
        return _continued_mp(row, mpmath.mpf(s), dps)


def _continued_mp(row: _RowData, s, dps: int):
    ser = row.series
    nu = _mp(row.nu)
    b = _mp(row.b)
    center = ser.center
    # Expansion point: M0**2 >= 100 |b| so the binomial series gains two digits per term.
    n1 = 1
    while row.b != 0 and (n1 + center) ** 2 < 100 * abs(row.b):
        n1 += 1
    head = mpmath.mpf(0)
    for n in range(1, n1):
        M = _mp(n + center)
        head += _mp(ser.multiplicity(n)) * (nu * nu * (M * M - b)) ** (-s / 2)
    M0 = _mp(n1 + center)
    eps = mpmath.mpf(10) ** (-dps + 5)
    tail = mpmath.mpf(0)
    for i, P_i in row.P.coeffs.items():
        Pi = _mp(P_i)
        coef = mpmath.mpf(1)  # C(-s/2, r) (-b)^r
        r = 0
        while True:
            arg = s + 2 * r - i
            if _removable_at(s, r, arg):
                term = Pi * _removable_limit(s, r) * (-b) ** r
            elif coef == 0:
                term = mpmath.mpf(0)
            else:
                term = Pi * coef * _hurwitz_em(arg, M0, dps)
            tail += term
            if row.b == 0 or (r > i and abs(term) < eps * max(abs(tail), 1)):
                break
            coef *= (-s / 2 - r) / (r + 1) * (-b)
            r += 1
    return head + nu ** (-s) * tail


def _removable_at(s, r: int, arg) -> bool:
    return arg == 1 and _removable(float(s), r)


def _removable_limit(s, r: int):
    """lim_{s' -> s} C(-s'/2, r) zeta_H(s' + c) at a simple pole cancelled by a zero of the binomial."""
    m = -int(s) // 2
    # C(m - e/2, r) = (-e/2) * prod_{j != m} (m - j) / r! + O(e**2); zeta_H ~ 1/e
    rest = math.factorial(m) * (-1) ** (r - 1 - m) * math.factorial(r - 1 - m)
    return mpmath.mpf(-1) / 2 * rest / math.factorial(r)


# ---------------------------------------------------------------------------
# residues

def residue_U(spec: SectionSpec, q: int, k: int) -> RationalPolynomial:
    """Res_{s=2k+1} zeta(s, U_q) on an odd sphere as a polynomial in u = 1/nu.

    Coefficient of u**(2k+1+2t):
    c_q C(-(2k+1)/2, t) sum_{j=k+t}^{p-1} e_{p-1-j}(d^q) C(-1/2, j-k-t) alpha_q**(2(j-k)).
    """
    p = spec.p
    if spec.parity != "odd":
        raise UnsupportedCaseError("residue_U is defined for odd-dimensional sections")
    if not 0 <= q <= p - 1 or not 0 <= k <= p - 1:
        raise DomainError(f"need 0 <= q, k <= p-1 = {p - 1}, got q={q}, k={k}")
    a = Fraction(q - p + 1)
    c = Fraction(2, math.factorial(q) * math.factorial(2 * p - q - 2))
    e = elementary_symmetric_all(d_vector(p, q))
    coeffs = {}
    for t in range(p - k):
        inner = sum((e[p - 1 - j] * rational_binomial(Fraction(-1, 2), j - k - t) * a ** (2 * (j - k))
                     for j in range(k + t, p)), Fraction(0))
        coeffs[2 * k + 1 + 2 * t] = c * rational_binomial(Fraction(-(2 * k + 1), 2), t) * inner
    return RationalPolynomial(coeffs)


def residue_U_expansion(spec: SectionSpec, q: int, k: int) -> RationalPolynomial:
    """The same residue read off the M-expansion: terms with i - 2r = 2k.

    Res = u**(2k+1) sum_r P_{2k+2r} C(-(2k+1)/2, r) (-alpha**2)**r (1 - u**2)**r.
    """
    if spec.parity != "odd":
        raise UnsupportedCaseError("residue_U_expansion is defined for odd-dimensional sections")
    ser = coexact_series(SectionSpec(spec.p, "odd"), q)
    P = ser.multiplicity_in_M()
    a2 = ser.alpha**2
    one_minus = RationalPolynomial({0: 1, 2: -1})
    out = RationalPolynomial()
    for r in range(0, (P.degree - 2 * k) // 2 + 1):
        c = P.coeff(2 * k + 2 * r) * rational_binomial(Fraction(-(2 * k + 1), 2), r) * (-a2) ** r
        out = out + c * one_minus**r
    return out * RationalPolynomial.monomial(2 * k + 1)


def residue_U_top(p: int, k: int) -> RationalPolynomial:
    """q = p-1 special case: 2 e_{p-1-k}(d^{p-1}) / (p-1)!^2 * u**(2k+1)."""
    e = elementary_symmetric_all(d_vector(p, p - 1))
    return RationalPolynomial.monomial(2 * k + 1, Fraction(2, math.factorial(p - 1) ** 2) * e[p - 1 - k])


def residue_numeric(spec: SectionSpec, q: int, s0: int, offsets=(1e-3, 1e-4),
                    precision: float = 1e-20) -> float:
    """Res_{s=s0} zeta(s, U_q) by symmetric pole extraction plus Richardson in h**2."""
    h1, h2 = offsets
    row = _row(spec, q)
    dps = _dps(precision)

    def g(h):
        with mpmath.workdps(dps):
            hp = mpmath.mpf(h)
            up = _continued_mp(row, s0 + hp, dps)
            dn = _continued_mp(row, s0 - hp, dps)
            return hp * (up - dn) / 2

    with mpmath.workdps(dps):
        g1, g2 = g(h1), g(h2)
        return float((g2 * h1**2 - g1 * h2**2) / (h1**2 - h2**2))


# ---------------------------------------------------------------------------
# exact values at s = 0

def zeta_tc_at_zero(t: int, c: int) -> Fraction:
    """zeta_{t,c}(0), the value at s = 0 of sum_{n>t} (n**2 - t**2)**(c - s).

    t = 0 is allowed (it arises for q = p-1).
    """
    if not isinstance(t, int) or not isinstance(c, int) or t < 0 or c < 0:
        raise DomainError(f"need integers t >= 0, c >= 0, got t={t!r}, c={c!r}")
    if c == 0:
        return Fraction(-1, 2) - t
    return (Fraction((-1) ** (c + 1) * t ** (2 * c), 2)
            - sum((n * n - t * t) ** c for n in range(1, t)))


def zeta_tc_at_zero_hurwitz(t: int, c: int) -> Fraction:
    """Independent route: sum_k C(c,k) (-t**2)**k zeta_H(2k - 2c, t+1), exactly."""
    return sum((math.comb(c, k) * (-t * t) ** k * hurwitz_at_nonpositive(2 * c - 2 * k, t + 1)
                for k in range(c + 1)), Fraction(0))


def zeta_U_at_zero_assembled(p: int, q: int) -> Fraction:
    if p < 1 or not 0 <= q <= p - 1:
        raise DomainError(f"need p >= 1 and 0 <= q <= p-1, got p={p}, q={q}")
    t = p - 1 - q  # -alpha_q
    e = elementary_symmetric_all(d_vector(p, q))
    c = Fraction(2, math.factorial(q) * math.factorial(2 * p - q - 2))
    return c * sum((e[p - j - 1] * zeta_tc_at_zero(t, j) for j in range(p)), Fraction(0))


def zeta_U_at_zero(p: int, q: int) -> int:
    """zeta(0, U_q) on S^{2p-1}; equals (-1)**(q+1)."""
    val = zeta_U_at_zero_assembled(p, q)
    if val != (-1) ** (q + 1):
        raise InconsistencyError(f"zeta(0, U_{q}) assembled to {val} for p={p}, expected {(-1) ** (q + 1)}")
    return int(val)
