"""Spectrum of the form Laplacian on the finite metric cone C_l(S^m_{sin alpha}).

The positive part of the absolute spectrum in degree q is a union of six
families of squared Bessel zeros divided by l**2.  For every coexact degree
q' in {q, q-1, q-2} one family runs over n >= 1 with order mu_{q',n}; the two
harmonic families have order |alpha| and weight equal to a Betti number.  The
relative spectrum in degree q is the absolute one in degree m+1-q (Hodge star
on the cone).
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Literal

from . import bessel
from .errors import BudgetExceededError, DomainError
from .sphere import SectionSpec, alpha, betti, coexact_series

DEFAULT_BUDGET = 2_000_000
MERGE_RTOL = 1e-11


@dataclass(frozen=True)
class SpectralFamily:
    """Eigenvalues {zero_k(mu, c)**2 * scale : k >= 1}, each with multiplicity ``weight``.

    ``c`` is None for zeros of J_mu and the rational constant for hat-zeros.
    ``mu_sq`` is exact; ``mu`` is its float square root.
    """

    kind: Literal["plain", "hat"]
    c: Fraction | None
    mu_sq: Fraction
    weight: int
    scale: Fraction
    source: str

    def __post_init__(self):
        if self.mu_sq < 0 or self.weight < 1 or self.scale <= 0:
            raise DomainError(f"invalid family {self}")
        if (self.kind == "hat") != (self.c is not None):
            raise DomainError("hat families need c, plain families must not have one")

    @property
    def mu(self) -> float:
        return math.sqrt(self.mu_sq)

    def eigenvalue(self, k: int, precision: float = bessel.DEFAULT_PRECISION):
        if self.kind == "plain":
            z = bessel.bessel_j_zero(self.mu, k, precision)
        else:
            z = bessel.bessel_jhat_zero(self.mu, self.c, k, precision)
        return z * z * self.scale if isinstance(z, float) else z * z * float(self.scale)

    def zeros_below(self, xmax: float) -> list[float]:
        return bessel.zeros_below(self.mu, self.c, xmax)

    def zero_lower_bound(self) -> float:
        return bessel.first_zero_lower_bound(self.mu, None if self.c is None else float(self.c))


@dataclass(frozen=True)
class FamilyGroup:
    """A coexact family indexed by n (``n=None`` member) or a single harmonic family."""

    kind: Literal["plain", "hat"]
    degree: int
    c: Fraction | None
    coexact: bool
    harmonic_weight: int = 0

    def member(self, spec: SectionSpec, n: int | None) -> SpectralFamily:
        scale = 1 / spec.l**2
        if not self.coexact:
            a = self.c if self.c is not None else alpha(spec, self.degree)
            return SpectralFamily(self.kind, self.c, a * a, self.harmonic_weight, scale,
                                  f"harmonic q={self.degree}")
        ser = coexact_series(spec, self.degree)
        mult = ser.multiplicity(n)
        if mult.denominator != 1:
            raise AssertionError(f"non-integer multiplicity {mult}")
        mu_sq = spec.nu**2 * ser.eigenvalue(n) + ser.alpha**2
        return SpectralFamily(self.kind, self.c, mu_sq, int(mult), scale,
                              f"coexact q={self.degree} n={n}")


def _coexact_ok(spec: SectionSpec, qq: int) -> bool:
    return 0 <= qq <= spec.m - 1


def abs_family_groups(spec: SectionSpec, q: int) -> list[FamilyGroup]:
    if not 0 <= q <= spec.m + 1:
        raise DomainError(f"degree q={q} outside 0..{spec.m + 1} for a cone of dimension {spec.m + 1}")
    out: list[FamilyGroup] = []
    if _coexact_ok(spec, q):
        out.append(FamilyGroup("hat", q, alpha(spec, q), True))
    if _coexact_ok(spec, q - 1):
        out.append(FamilyGroup("hat", q - 1, alpha(spec, q - 1), True))
        out.append(FamilyGroup("plain", q - 1, None, True))
    if _coexact_ok(spec, q - 2):
        out.append(FamilyGroup("plain", q - 2, None, True))
    for qq in (q, q - 1):
        if 0 <= qq <= spec.m and betti(spec, qq):
            out.append(FamilyGroup("hat", qq, alpha(spec, qq), False, betti(spec, qq)))
    return out


def abs_spectrum_families(spec: SectionSpec, q: int, n_max: int = 1) -> list[SpectralFamily]:
    """Members of each union term for n = 1..n_max (harmonic terms appear once)."""
    fams = []
    for g in abs_family_groups(spec, q):
        if g.coexact:
            fams.extend(g.member(spec, n) for n in range(1, n_max + 1))
        else:
            fams.append(g.member(spec, None))
    return fams


@dataclass(frozen=True)
class SpectrumEntry:
    eigenvalue: float
    multiplicity: int
    kind: str
    mu: float
    k: int
    source: str


def _family_entries(fam: SpectralFamily, xmax: float) -> Iterator[SpectrumEntry]:
    for k, z in enumerate(fam.zeros_below(xmax), start=1):
        yield SpectrumEntry(z * z * float(fam.scale), fam.weight, fam.kind, fam.mu, k, fam.source)


def iter_abs_entries(spec: SectionSpec, q: int, cutoff: float,
                     budget: int = DEFAULT_BUDGET) -> list[SpectrumEntry]:
    """Every (family, k) with eigenvalue <= cutoff, unmerged.

    mu_{q',n} increases with n and the first zero exceeds a lower bound that
    increases with mu, so the n-loop stops at the first member whose bound
    lies beyond l*sqrt(cutoff).
    """
    if not cutoff > 0:
        raise DomainError(f"cutoff must be positive, got {cutoff}")
    xmax = float(spec.l) * math.sqrt(cutoff)
    entries: list[SpectrumEntry] = []
    for g in abs_family_groups(spec, q):
        ns = iter(range(1, 1 << 62)) if g.coexact else iter([None])
        for n in ns:
            fam = g.member(spec, n)
            if fam.zero_lower_bound() > xmax:
                break
            entries.extend(_family_entries(fam, xmax))
            if len(entries) > budget:
                raise BudgetExceededError(
                    f"more than {budget} eigenvalues below cutoff {cutoff}; raise the budget or lower the cutoff")
    return entries


def merge_entries(entries: list[SpectrumEntry], rtol: float = MERGE_RTOL) -> list[tuple[float, int]]:
    out: list[list] = []
    for e in sorted(entries, key=lambda e: e.eigenvalue):
        if out and e.eigenvalue - out[-1][0] <= rtol * e.eigenvalue:
            out[-1][1] += e.multiplicity
        else:
            out.append([e.eigenvalue, e.multiplicity])
    return [(v, m) for v, m in out]


def enumerate_abs_spectrum(spec: SectionSpec, q: int, cutoff: float,
                           budget: int = DEFAULT_BUDGET) -> list[tuple[float, int]]:
    """Sorted (eigenvalue, multiplicity) pairs of the positive absolute spectrum up to ``cutoff``."""
    return merge_entries(iter_abs_entries(spec, q, cutoff, budget))


def enumerate_rel_spectrum(spec: SectionSpec, q: int, cutoff: float,
                           budget: int = DEFAULT_BUDGET) -> list[tuple[float, int]]:
    """Relative spectrum in degree q, as the absolute spectrum in degree m+1-q."""
    if not 0 <= q <= spec.m + 1:
        raise DomainError(f"degree q={q} outside 0..{spec.m + 1}")
    return enumerate_abs_spectrum(spec, spec.m + 1 - q, cutoff, budget)


def spectrum_csv(entries: list[SpectrumEntry]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["eigenvalue", "multiplicity", "family-kind", "mu", "k"])
    for e in sorted(entries, key=lambda e: e.eigenvalue):
        w.writerow([f"{e.eigenvalue:.15g}", e.multiplicity, e.kind, f"{e.mu:.15g}", e.k])
    return buf.getvalue()
