"""Spectral data of the round sphere sections S^{2p-1} and S^{2p} of radius sin(alpha).

Eigenvalues are kept as the integer lambda/nu**2 (nu = 1/sin(alpha)) so that
everything stays exact until a float is explicitly requested.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal

from .errors import DomainError
from .exact import (
    RationalLike,
    RationalPolynomial,
    as_rational,
    elementary_symmetric_all,
    format_rational,
    poly_from_roots,
)

Parity = Literal["odd", "even"]


@dataclass(frozen=True)
class SectionSpec:
    """Cone over the sphere S^m_{sin alpha}, m = 2p-1 (odd) or 2p (even), of length l."""

    p: int
    parity: Parity
    nu: Fraction = Fraction(1)
    l: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "nu", as_rational(self.nu))
        object.__setattr__(self, "l", as_rational(self.l))
        if not isinstance(self.p, int) or self.p < 1:
            raise DomainError(f"p must be an integer >= 1, got {self.p!r}")
        if self.parity not in ("odd", "even"):
            raise DomainError(f"parity must be 'odd' or 'even', got {self.parity!r}")
        if self.nu < 1:
            raise DomainError(f"nu = 1/sin(alpha) must be >= 1, got {self.nu}")
        if self.l <= 0:
            raise DomainError(f"cone length must be positive, got {self.l}")

    @classmethod
    def from_sin_alpha(cls, p: int, parity: Parity, sin_alpha: RationalLike, l: RationalLike = 1):
        s = as_rational(sin_alpha)
        if not 0 < s <= 1:
            raise DomainError(f"sin(alpha) must lie in (0, 1], got {s}")
        return cls(p, parity, 1 / s, as_rational(l))

    @property
    def m(self) -> int:
        """Dimension of the section."""
        return 2 * self.p - 1 if self.parity == "odd" else 2 * self.p

    @property
    def sin_alpha(self) -> Fraction:
        return 1 / self.nu


def alpha(spec: SectionSpec, q: int) -> Fraction:
    """The Bessel-order shift alpha_q = (1 + 2q - m)/2."""
    if not 0 <= q <= spec.m:
        raise DomainError(f"degree q={q} outside 0..{spec.m}")
    return Fraction(1 + 2 * q - spec.m, 2)


def _check_coexact(spec: SectionSpec, q: int, n: int) -> None:
    if not 0 <= q <= spec.p - 1:
        raise DomainError(f"coexact tables cover 0 <= q <= p-1 = {spec.p - 1}, got q={q}")
    if n < 1:
        raise DomainError(f"eigenvalue index n must be >= 1, got {n}")


def coexact_eigenvalue(spec: SectionSpec, q: int, n: int) -> int:
    """lambda_{q,n} / nu**2 for coexact q-forms.

    Special rows take precedence over the generic one (they coincide where
    both apply).
    """
    _check_coexact(spec, q, n)
    p = spec.p
    if spec.parity == "odd":
        if q == p - 1:
            return (n - 1 + p) ** 2
        if q == p - 2:
            return (n - 1 + p) ** 2 - 1
        if q == 0:
            return n * (n + 2 * p - 2)
        return (n + q) * (n + 2 * p - q - 2)
    if q == p - 1:
        return (n + p) * (n + p + 1)
    if q == 0:
        return (n + 1) * (n + 2 * p)
    # Middle rows written in the form that agrees with the q=0 and q=p-1 rows.
    return (n + q + 1) * (n + 2 * p - q)


def coexact_multiplicity(spec: SectionSpec, q: int, n: int) -> int:
    _check_coexact(spec, q, n)
    p = spec.p
    if spec.parity == "odd":
        prod = 1
        for j in range(1, p + 1):
            if j != q + 1:
                prod *= (n - 1 + j) * (2 * p + n - 1 - j)
        if q == p - 1:
            denom = math.factorial(p - 1) ** 2
        elif q == p - 2:
            denom = math.factorial(p - 2) * math.factorial(p)
        elif q == 0:
            denom = math.factorial(2 * p - 2)
        else:
            denom = math.factorial(q) * math.factorial(2 * p - q - 2)
        val = Fraction(2 * prod, denom)
    elif q == p - 1:
        val = (Fraction(2 * p + 2 * n + 1, 2 * p + n + 1)
               * math.comb(p + n - 1, n) * math.comb(2 * p + n + 1, p))
    elif q == 0:
        val = Fraction(2 * (n + 1) + 2 * p - 1, 2 * p - 1) * math.comb(2 * p + n - 1, n + 1)
    else:
        val = Fraction(
            math.factorial(n + 2 * p) * (2 * n + 2 * p + 1),
            math.factorial(q) * math.factorial(2 * p - q - 1) * math.factorial(n)
            * (n + 2 * p - q) * (n + q + 1),
        )
    if val.denominator != 1:
        raise AssertionError(f"non-integer multiplicity {val} at q={q}, n={n}")
    return int(val)


@dataclass(frozen=True)
class CoexactSeries:
    """Linear-factor form of one coexact row.

    ``mult(n) = coeff * prod(n + r for r in mult_offsets)`` and
    ``lambda(n)/nu**2 = (n + eig_offsets[0]) * (n + eig_offsets[1])``.
    """

    degree: int
    alpha: Fraction
    coeff: Fraction
    mult_offsets: tuple[Fraction, ...]
    eig_offsets: tuple[Fraction, Fraction]

    @property
    def center(self) -> Fraction:
        """M = n + center turns lambda/nu**2 into M**2 - half_gap**2."""
        return (self.eig_offsets[0] + self.eig_offsets[1]) / 2

    @property
    def half_gap(self) -> Fraction:
        return (self.eig_offsets[1] - self.eig_offsets[0]) / 2

    def multiplicity(self, n: int) -> Fraction:
        out = self.coeff
        for r in self.mult_offsets:
            out *= n + r
        return out

    def eigenvalue(self, n: int) -> Fraction:
        return (n + self.eig_offsets[0]) * (n + self.eig_offsets[1])

    def multiplicity_in_M(self) -> RationalPolynomial:
        """The multiplicity as an exact polynomial in M = n + center."""
        return poly_from_roots([self.center - r for r in self.mult_offsets], self.coeff)


def coexact_series(spec: SectionSpec, q: int) -> CoexactSeries:
    """Row data for any coexact degree 0 <= q <= m-1, using q <-> m-1-q duality above p-1."""
    if not 0 <= q <= spec.m - 1:
        raise DomainError(f"no coexact {q}-forms on a {spec.m}-sphere")
    p = spec.p
    row = q if q <= p - 1 else spec.m - 1 - q
    a = alpha(spec, q)
    if spec.parity == "odd":
        coeff = Fraction(2, math.factorial(row) * math.factorial(2 * p - row - 2))
        offs = []
        for j in range(1, p + 1):
            if j != row + 1:
                offs += [Fraction(j - 1), Fraction(2 * p - 1 - j)]
        eig = (Fraction(row), Fraction(2 * p - row - 2))
    else:
        coeff = Fraction(2, math.factorial(row) * math.factorial(2 * p - row - 1))
        offs = [Fraction(2 * p + 1, 2)]
        offs += [Fraction(i + 1) for i in range(2 * p) if i not in (row, 2 * p - row - 1)]
        eig = (Fraction(row + 1), Fraction(2 * p - row))
    return CoexactSeries(q, a, coeff, tuple(offs), eig)


def d_vector(p: int, q: int) -> tuple[int, ...]:
    if p < 1 or not 0 <= q <= p - 1:
        raise DomainError(f"d-vector needs p >= 1 and 0 <= q <= p-1, got p={p}, q={q}")
    return tuple((j - q - 1) * (2 * p - q - j - 1) for j in range(1, p + 1) if j != q + 1)


def f_poly(p: int, h: int) -> RationalPolynomial:
    """e_h(x^2 - (p-1)^2, ..., x^2 - 1, x^2) as a polynomial in x."""
    if not 0 <= h <= p:
        raise DomainError(f"f_h needs 0 <= h <= p, got h={h}, p={p}")
    # e_h of (y - a_i) over y = x^2: coefficients come from the signed e's of the a_i.
    sq = [a * a for a in range(p)]
    e = elementary_symmetric_all(sq)
    coeffs = {}
    for i in range(h + 1):
        # choose which h - i of the h factors contribute -a^2: C(p-(h-i), i) ways per subset
        coeffs[2 * i] = (-1) ** (h - i) * e[h - i] * math.comb(p - (h - i), i)
    return RationalPolynomial(coeffs)


def betti(spec: SectionSpec, q: int) -> int:
    if not 0 <= q <= spec.m:
        raise DomainError(f"degree q={q} outside 0..{spec.m}")
    return 1 if q in (0, spec.m) else 0


def harmonic_cone_dims(spec: SectionSpec, q: int, bc: Literal["abs", "rel"]) -> int:
    """Dimension of harmonic q-forms on the cone under absolute or relative conditions."""
    if not 0 <= q <= spec.m + 1:
        raise DomainError(f"degree q={q} outside 0..{spec.m + 1}")
    top = spec.p - 1 if spec.parity == "odd" else spec.p
    if bc == "abs":
        return betti(spec, q) if q <= top else 0
    if bc == "rel":
        return betti(spec, q - 1) if q > top else 0
    raise DomainError(f"boundary condition must be 'abs' or 'rel', got {bc!r}")


@dataclass(frozen=True)
class CoexactSpectrumEntry:
    q: int
    n: int
    lambda_over_nu_sq: int
    mult: int
    alpha_q: Fraction
    mu_sq: Fraction


def spectrum_table(spec: SectionSpec, q: int, n_max: int) -> list[CoexactSpectrumEntry]:
    a = alpha(spec, q)
    rows = []
    for n in range(1, n_max + 1):
        lam = coexact_eigenvalue(spec, q, n)
        rows.append(CoexactSpectrumEntry(
            q, n, lam, coexact_multiplicity(spec, q, n), a, spec.nu**2 * lam + a * a))
    return rows


def spectrum_csv(rows: Iterable[CoexactSpectrumEntry]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["q", "n", "lambda_over_nu_sq", "mult", "alpha_q"])
    for r in rows:
        w.writerow([r.q, r.n, r.lambda_over_nu_sq, r.mult, format_rational(r.alpha_q)])
    return buf.getvalue()
