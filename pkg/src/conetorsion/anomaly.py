"""Exact anomaly boundary polynomials for cones over spheres, and the pieces of
their spectral assembly.

All polynomials are in u = 1/nu = sin(alpha).  For a (2p-1)-sphere section the
boundary term is an odd polynomial of degree 2p-1, for a 2p-sphere an even one
of degree 2p.  The spectral side sums, over k, u-coefficients
Q_p(k) = sum_j M_j(p,k), where M_j combines residues of zeta(s, U_q) with the
finite parts F(q, j); after the alternating q-sum the unknown constants in F
cancel and M_j(p,k) reduces to a closed form equal to N_j(p,k).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Literal, Mapping

from . import _kernels
from .errors import DomainError, UnsupportedCaseError
from .exact import (
    RationalLike,
    RationalPolynomial,
    as_rational,
    double_factorial,
    elementary_symmetric_all,
    rational_binomial,
)
from .sphere import SectionSpec, d_vector

HALF = Fraction(-1, 2)
Representation = Literal["direct", "regrouped"]


@dataclass(frozen=True)
class BoundaryTerm:
    poly: RationalPolynomial
    parity: Literal["odd-powers", "even-powers"]

    def __post_init__(self):
        if self.parity == "odd-powers" and not self.poly.is_odd():
            raise DomainError(f"expected only odd powers in {self.poly.format()}")
        if self.parity == "even-powers" and not self.poly.is_even():
            raise DomainError(f"expected only even powers in {self.poly.format()}")

    def __call__(self, u: RationalLike) -> Fraction:
        return self.poly(u)

    def evaluate_float(self, u: float) -> float:
        return self.poly.evaluate_float(u)


def _binom_or_zero(r, k: int) -> Fraction:
    return rational_binomial(r, k) if k >= 0 else Fraction(0)


def _check_p(p: int) -> None:
    if not isinstance(p, int) or p < 1:
        raise DomainError(f"p must be an integer >= 1, got {p!r}")


def _check_pkj(p: int, k: int, j: int) -> None:
    _check_p(p)
    if not 0 <= j <= k <= p - 1:
        raise DomainError(f"need 0 <= j <= k <= p-1, got p={p}, k={k}, j={j}")


# ---------------------------------------------------------------------------
# the boundary polynomials

def _abm_odd_direct(p: int) -> RationalPolynomial:
    c = Fraction(math.factorial(2 * p - 1), 4**p * math.factorial(p - 1))
    coeffs: dict[int, Fraction] = {}
    for j in range(p):
        w = Fraction(2 ** (p - j), math.factorial(j) * double_factorial(2 * (p - j) - 1))
        for h in range(j + 1):
            e = 2 * (p - j + h) - 1
            coeffs[e] = coeffs.get(e, Fraction(0)) + c * w * math.comb(j, h) * (-1) ** h / e
    return RationalPolynomial(coeffs)


def _abm_odd_regrouped(p: int) -> RationalPolynomial:
    return RationalPolynomial({2 * k + 1: sum((n_coeff(p, k, j) for j in range(k + 1)), Fraction(0))
                               for k in range(p)})


def _abm_even_direct(p: int) -> RationalPolynomial:
    coeffs: dict[int, Fraction] = {}
    for j in range(p):
        w = Fraction(1, 8 * math.factorial(j) * math.factorial(p - j))
        for h in range(j + 1):
            e = 2 * p - 2 * (j - h)
            coeffs[e] = coeffs.get(e, Fraction(0)) + w * math.comb(j, h) * (-1) ** h * Fraction(2, p - j + h)
    return RationalPolynomial(coeffs)


def _abm_even_regrouped(p: int) -> RationalPolynomial:
    coeffs = {}
    for k in range(p):
        s = sum((-1) ** (k - j) * math.comb(p, p - 1 - j) * math.comb(p - 1 - j, k - j) for j in range(k + 1))
        coeffs[2 * (k + 1)] = Fraction(s, 2 * math.factorial(p) * 2 * (k + 1))
    return RationalPolynomial(coeffs)


@lru_cache(maxsize=None)
def abm_odd(p: int, representation: Representation = "regrouped") -> BoundaryTerm:
    """Anomaly boundary polynomial for the cone over S^{2p-1}_{sin alpha}."""
    _check_p(p)
    if representation == "direct":
        poly = _abm_odd_direct(p)
    elif representation == "regrouped":
        poly = _abm_odd_regrouped(p)
    else:
        raise DomainError(f"unknown representation {representation!r}")
    return BoundaryTerm(poly, "odd-powers")


@lru_cache(maxsize=None)
def abm_even(p: int, representation: Representation = "regrouped") -> BoundaryTerm:
    """Anomaly boundary polynomial for the cone over S^{2p}_{sin alpha}."""
    _check_p(p)
    if representation == "direct":
        poly = _abm_even_direct(p)
    elif representation == "regrouped":
        poly = _abm_even_regrouped(p)
    else:
        raise DomainError(f"unknown representation {representation!r}")
    return BoundaryTerm(poly, "even-powers")


# ---------------------------------------------------------------------------
# coefficient cells

def n_coeff(p: int, k: int, j: int) -> Fraction:
    _check_pkj(p, k, j)
    return (Fraction(math.factorial(2 * p - 1), 4**p * math.factorial(p - 1))
            / (math.factorial(p - 1 - k) * (2 * k + 1))
            * Fraction((-1) ** (k - j) * 2 ** (j + 1), math.factorial(k - j) * double_factorial(2 * j + 1)))


def m_coeff_reduced(p: int, k: int, j: int) -> Fraction:
    """M_j(p,k) after the alternating q-sum has removed the finite-part constants."""
    _check_pkj(p, k, j)
    tail = sum((math.comb(p, p - 1 - l) * rational_binomial(HALF, l - k) for l in range(k, p)), Fraction(0))
    return rational_binomial(HALF - j, k - j) * Fraction(1, 2 * (2 * j + 1)) * tail


def d_term(p: int, q: int, k: int, t: int) -> Fraction:
    """Coefficient of u**(2k+1+2t) in Res_{s=2k+1} zeta(s, U_q).

    Written with C(l-k-t-1/2, l-k-t) (-1)**(l-k-t) in place of C(-1/2, l-k-t).
    """
    _check_p(p)
    if not 0 <= q <= p - 1 or not 0 <= k <= p - 1 or not 0 <= t <= p - 1 - k:
        raise DomainError(f"index out of range: p={p}, q={q}, k={k}, t={t}")
    a = Fraction(q - p + 1)
    e = elementary_symmetric_all(d_vector(p, q))
    c = Fraction(2, math.factorial(q) * math.factorial(2 * p - q - 2))
    inner = Fraction(0)
    for l in range(k + t, p):
        m = l - k - t
        inner += e[p - 1 - l] * (-1) ** m * rational_binomial(HALF + m, m) * a ** (2 * (l - k))
    return c * rational_binomial(Fraction(-(2 * k + 1), 2), t) * inner


@dataclass(frozen=True)
class FLeading:
    """Known part of the finite part F(q, j).

    For j = 0 the value is exact.  For j >= 1 only the leading term
    ``coeff * alpha**(2j)`` is known; the remaining constants enter through a
    polynomial in alpha**2 shared by all q and cancel in the q-sum.
    """

    coeff: Fraction
    alpha: Fraction
    j: int
    exact: bool
    constant_tail_shared: bool

    @property
    def leading(self) -> Fraction:
        return self.coeff * self.alpha ** (2 * self.j)


def f_leading(p: int, q: int, j: int) -> FLeading:
    _check_p(p)
    if not 0 <= q <= p - 1 or not 0 <= j <= p - 1:
        raise DomainError(f"need 0 <= q, j <= p-1, got q={q}, j={j}")
    a = Fraction(q - p + 1)
    if j == 0:
        return FLeading(Fraction(2 if q <= p - 2 else 1), a, 0, True, False)
    return FLeading(Fraction(2, 2 * j + 1), a, j, False, True)


def _finite_part(p: int, q: int, j: int, tail: Mapping[int, Fraction]) -> Fraction:
    lead = f_leading(p, q, j)
    if lead.exact:
        return lead.leading
    if q == p - 1:
        # alpha = 0: only the shared constant survives, at half weight
        return Fraction(tail.get(0, 0)) / 2
    a2 = lead.alpha**2
    return lead.leading + sum((Fraction(tail.get(t, 0)) * a2**t for t in range(j)), Fraction(0))


def m_coeff_assembled(p: int, k: int, j: int, tail: Mapping[int, RationalLike] | None = None) -> Fraction:
    """M_j(p,k) before cancellation: (1/4) sum_q (-1)**q F(q,j) D(q,j,k-j).

    ``tail`` supplies arbitrary values for the unknown finite-part constants
    (t -> constant multiplying alpha**(2t), t = 0..j-1); the result does not
    depend on them.
    """
    _check_pkj(p, k, j)
    tail = {t: as_rational(v) for t, v in (tail or {}).items()}
    total = Fraction(0)
    for q in range(p):
        total += (-1) ** q * _finite_part(p, q, j, tail) * d_term(p, q, j, k - j)
    return total / 4


# ---------------------------------------------------------------------------
# combinatorial identities

def _ida1(n: int) -> bool:
    f = math.factorial(2 * n)
    lhs = sum((Fraction((-1) ** k * math.comb(2 * n, k), f) for k in range(n + 1)), Fraction(0))
    mid = Fraction((-1) ** n * math.comb(2 * n - 1, n), f)
    rhs = Fraction((-1) ** n * math.comb(2 * n, n), 2 * f)
    return lhs == mid == rhs


def _idA2(n: int, alpha: Fraction) -> bool:
    lhs = sum((Fraction((-1) ** k * math.comb(n, k)) * (alpha + k) ** n for k in range(n + 1)), Fraction(0))
    return lhs == (-1) ** n * math.factorial(n)


def _idA3(n: int, N: int, alpha: Fraction) -> bool:
    lhs = sum((Fraction((-1) ** k * math.comb(N, k)) * (alpha + k) ** (n - 1) for k in range(N + 1)), Fraction(0))
    return lhs == 0


def _idB(n: int, k: int) -> bool:
    lhs = sum((math.comb(n + 1, l + 1) * _binom_or_zero(HALF, l - k) for l in range(n + 1)), Fraction(0))
    mid = rational_binomial(Fraction(2 * n + 1, 2), n - k)
    rhs = Fraction(double_factorial(2 * n + 1),
                   2 ** (n - k) * math.factorial(n - k) * double_factorial(2 * k + 1))
    return lhs == mid == rhs


IDENTITIES = ("ida1", "idA2", "idA3", "idB")


def identity_check(name: str, **params) -> bool:
    """Exact check of one instance.

    ida1: n >= 1.  idA2: n >= 1, alpha.  idA3: 1 <= n <= N, alpha.  idB: 0 <= k <= n.
    The alternating sign sits on the summation index.
    """
    try:
        if name == "ida1":
            n = params["n"]
            if n < 1:
                raise DomainError(f"ida1 needs n >= 1, got {n}")
            return _ida1(n)
        if name == "idA2":
            n, a = params["n"], as_rational(params["alpha"])
            if n < 1:
                raise DomainError(f"idA2 needs n >= 1, got {n}")
            return _idA2(n, a)
        if name == "idA3":
            n, N, a = params["n"], params["N"], as_rational(params["alpha"])
            if not 1 <= n <= N:
                raise DomainError(f"idA3 needs 1 <= n <= N, got n={n}, N={N}")
            return _idA3(n, N, a)
        if name == "idB":
            n, k = params["n"], params["k"]
            if not 0 <= k <= n:
                raise DomainError(f"idB needs 0 <= k <= n, got n={n}, k={k}")
            return _idB(n, k)
    except KeyError as exc:
        raise DomainError(f"{name} is missing parameter {exc.args[0]!r}") from None
    raise DomainError(f"unknown identity {name!r}; expected one of {', '.join(IDENTITIES)}")


def alt_power_sum(p: int, m: int) -> Fraction:
    """sum_{q=0}^{p-1} (-1)**q C(2p-2, q) alpha_q**(2m) / (2p-2)!, alpha_q = q - p + 1.

    Over this half range the sum is 0 for 1 <= m < p-1 and 1/2 for m = p-1 >= 1.
    """
    _check_p(p)
    if m < 0:
        raise DomainError(f"m must be >= 0, got {m}")
    return sum((Fraction((-1) ** q * math.comb(2 * p - 2, q)) * Fraction(q - p + 1) ** (2 * m)
                for q in range(p)), Fraction(0)) / math.factorial(2 * p - 2)


# ---------------------------------------------------------------------------
# spectral assembly

def t_ab_odd(p: int) -> BoundaryTerm:
    """sum_k u**(2k+1) sum_j M_j(p,k) for the cone over S^{2p-1}."""
    _check_p(p)
    if p == 1:
        raise UnsupportedCaseError(
            "p=1: the j-sum defining the anomaly contribution is empty for the circle, "
            "so the assembly does not produce the boundary term (1/2) sin(alpha)")
    return BoundaryTerm(
        RationalPolynomial({2 * k + 1: sum((m_coeff_reduced(p, k, j) for j in range(k + 1)), Fraction(0))
                            for k in range(p)}),
        "odd-powers")


def t_ab_odd_assembled(p: int, tail: Mapping[int, RationalLike] | None = None) -> BoundaryTerm:
    """As :func:`t_ab_odd` but through the pre-cancellation q-sums."""
    _check_p(p)
    if p == 1:
        return t_ab_odd(p)
    return BoundaryTerm(
        RationalPolynomial({2 * k + 1: sum((m_coeff_assembled(p, k, j, tail) for j in range(k + 1)), Fraction(0))
                            for k in range(p)}),
        "odd-powers")


def _even_p1_g(nu_sq: float, s: float, n_terms: int) -> float:
    """(s-1) * sum_n (2n+3) (nu^2 (n+1)(n+2) + 1/4)**(-s) via Euler-Maclaurin.

    The multiplicity is the derivative of the eigenvalue polynomial, so the tail
    integral is exact: Y**(1-s) / (nu^2 (s-1)) with Y = nu^2 (N+1)(N+2) + 1/4.
    """
    N = n_terms

    def f(x):
        return (2 * x + 3) * (nu_sq * (x + 1) * (x + 2) + 0.25) ** (-s)

    def df(x):
        Q = nu_sq * (x + 1) * (x + 2) + 0.25
        return 2 * Q ** (-s) - s * (2 * x + 3) ** 2 * nu_sq * Q ** (-s - 1)

    head = _kernels.power_sum(2.0, [1.5], 1.0, 2.0, nu_sq, 0.25, 2 * s, 1, N)
    Y = nu_sq * (N + 1) * (N + 2) + 0.25
    return (s - 1) * (head + f(N) / 2 - df(N) / 12) + Y ** (1 - s) / nu_sq


def even_p1_residue(nu: RationalLike, offsets=(1e-3, 1e-4), n_terms: int = 100_000) -> float:
    """Res_{s=1} of sum_n (2n+3) mu_n**(-2s) on S^2, by symmetric pole extraction and Richardson."""
    nu_sq = float(as_rational(nu)) ** 2
    h1, h2 = offsets

    def g(h):
        return (_even_p1_g(nu_sq, 1 + h, n_terms) + _even_p1_g(nu_sq, 1 - h, n_terms)) / 2

    g1, g2 = g(h1), g(h2)
    return (g2 * h1**2 - g1 * h2**2) / (h1**2 - h2**2)


def t_ab_even_numeric(spec: SectionSpec, precision: float = 1e-10) -> float:
    """Anomaly contribution for the cone over S^2: (1/2) * (-alpha_0) * Res_{s=1}."""
    if spec.parity != "even":
        raise DomainError("t_ab_even_numeric needs an even-dimensional section")
    if spec.p != 1:
        raise UnsupportedCaseError(
            f"p={spec.p}: the even assembly needs the constants K_(2j,t) of the finite parts "
            "for j >= 2, which are not available in closed form")
    rz = Fraction(1, 2)  # -alpha_0
    return 0.5 * float(rz) * even_p1_residue(spec.nu)
