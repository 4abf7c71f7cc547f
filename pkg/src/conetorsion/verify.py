"""Named verification suites.

Each check returns a JSON-ready dict with at least ``check``, ``cells`` and
``failures``; failing cells are listed under ``failed`` (truncated).  Checks
run in the fixed order of ``CHECKS`` and never stop at the first failure.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable

from scipy.special import jnp_zeros

from .anomaly import (
    abm_even,
    abm_odd,
    d_term,
    identity_check,
    m_coeff_reduced,
    n_coeff,
    t_ab_even_numeric,
    t_ab_odd,
)
from .cone import enumerate_abs_spectrum
from .exact import RationalPolynomial
from .sphere import SectionSpec
from .torsion import proposition_check, torsion_report
from .zeta import (
    residue_U,
    residue_numeric,
    zeta_U,
    zeta_U_at_zero_assembled,
    zeta_U_top_closed_form,
)

MAX_LISTED = 20
IDENTITY_ALPHAS = (Fraction(0), Fraction(1, 3), Fraction(-1, 2), Fraction(7, 5))

# tolerances for the numeric checks
TOL_CLOSED_FORM = 1e-8
TOL_RESIDUE = 1e-6
TOL_EVEN = 1e-8
TOL_DISC = 1e-10
TOL_TORSION = 1e-9


def _result(name: str, cells: int, failed: list, **extra) -> dict:
    out = {"check": name, **extra, "cells": cells, "failures": len(failed)}
    if failed:
        out["failed"] = failed[:MAX_LISTED]
    return out


def check_M_eq_N(p_max: int = 12, p_min: int = 2) -> dict:
    cells, failed = 0, []
    for p in range(p_min, p_max + 1):
        for k in range(p):
            for j in range(k + 1):
                cells += 1
                if m_coeff_reduced(p, k, j) != n_coeff(p, k, j):
                    failed.append([p, k, j])
    return _result("M_eq_N", cells, failed, p=p_max)


def check_T_AB_eq_ABM(p_max: int = 12) -> dict:
    failed = [p for p in range(2, p_max + 1) if t_ab_odd(p).poly != abm_odd(p).poly]
    return _result("T_AB_eq_ABM", max(p_max - 1, 0), failed, p=p_max)


def check_representations(p_max: int = 20) -> dict:
    failed = []
    for p in range(1, p_max + 1):
        if abm_odd(p, "direct") != abm_odd(p, "regrouped"):
            failed.append(["odd", p])
        if abm_even(p, "direct") != abm_even(p, "regrouped"):
            failed.append(["even", p])
    return _result("representations", 2 * p_max, failed, p=p_max)


def check_zeta_at_zero(p_max: int = 10) -> dict:
    cells, failed = 0, []
    for p in range(1, p_max + 1):
        for q in range(p):
            cells += 1
            if zeta_U_at_zero_assembled(p, q) != (-1) ** (q + 1):
                failed.append([p, q])
    return _result("zeta_at_zero", cells, failed, p=p_max)


def check_identities(ida1_max: int = 30, idA_max: int = 12, idB_max: int = 25) -> dict:
    cells, failed = 0, []
    for n in range(1, ida1_max + 1):
        cells += 1
        if not identity_check("ida1", n=n):
            failed.append(["ida1", n])
    for a in IDENTITY_ALPHAS:
        for n in range(1, idA_max + 1):
            cells += 1
            if not identity_check("idA2", n=n, alpha=a):
                failed.append(["idA2", n, str(a)])
            for N in range(n, idA_max + 1):
                cells += 1
                if not identity_check("idA3", n=n, N=N, alpha=a):
                    failed.append(["idA3", n, N, str(a)])
    for n in range(idB_max + 1):
        for k in range(n + 1):
            cells += 1
            if not identity_check("idB", n=n, k=k):
                failed.append(["idB", n, k])
    return _result("identities", cells, failed)


def check_residue_consistency(p_max: int = 4) -> dict:
    cells, failed = 0, []
    for p in range(1, p_max + 1):
        spec = SectionSpec(p, "odd")
        for q in range(p):
            for k in range(p):
                cells += 1
                poly = RationalPolynomial({2 * (k + t) + 1: d_term(p, q, k, t) for t in range(p - k)})
                if poly != residue_U(spec, q, k):
                    failed.append([p, q, k])
    return _result("residue_consistency", cells, failed, p=p_max)


def check_closed_form(ps=(2, 3, 4), nus=(1, 2)) -> dict:
    cells, failed, worst = 0, [], 0.0
    for p in ps:
        cf = zeta_U_top_closed_form(p)
        for nu in nus:
            s = 2 * p + 2
            err = abs(zeta_U(SectionSpec(p, "odd", Fraction(nu)), p - 1, s) - cf.evaluate(s, nu))
            worst = max(worst, err)
            cells += 1
            if not err < TOL_CLOSED_FORM:
                failed.append([p, nu, err])
    return _result("closed_form", cells, failed, max_error=worst, tol=TOL_CLOSED_FORM)


def check_residues(ps=(2, 3), nus=(1, 2)) -> dict:
    jobs = [(p, nu, q, k) for p in ps for nu in nus for q in range(p) for k in range(p)]

    def one(job):
        p, nu, q, k = job
        spec = SectionSpec(p, "odd", Fraction(nu))
        exact = float(residue_U(spec, q, k)(Fraction(1, nu)))
        return abs(residue_numeric(spec, q, 2 * k + 1) - exact)

    # sequential: mpmath's working precision is process-global state
    errs = [one(job) for job in jobs]
    failed = [[*job, e] for job, e in zip(jobs, errs) if not e < TOL_RESIDUE]
    return _result("residues", len(jobs), failed, max_error=max(errs), tol=TOL_RESIDUE)


def check_even_p1(sins=(Fraction(1), Fraction(1, 2), Fraction(1, 3))) -> dict:
    failed, worst = [], 0.0
    for s in sins:
        val = t_ab_even_numeric(SectionSpec.from_sin_alpha(1, "even", s))
        err = max(abs(val - float(s) ** 2 / 4), abs(val - float(abm_even(1)(s))))
        worst = max(worst, err)
        if not err < TOL_EVEN:
            failed.append([str(s), err])
    return _result("even_p1", len(sins), failed, max_error=worst, tol=TOL_EVEN)


def neumann_disc_eigenvalues(cutoff: float) -> list[tuple[float, int]]:
    """Positive Neumann eigenvalues of the unit disc, j'_{n,k}**2 <= cutoff."""
    out = []
    n = 0
    while True:
        count = 1
        while True:
            z = jnp_zeros(n, count)
            if z[-1] ** 2 > cutoff:
                break
            count += 1
        zs = [x for x in z if x * x <= cutoff]
        if n == 0:
            zs = [x for x in zs if x > 0]
        if not zs and n > 0:
            return sorted(out)
        out.extend((x * x, 1 if n == 0 else 2) for x in zs)
        n += 1


def check_flat_cone(cutoff: float = 100.0) -> dict:
    got = enumerate_abs_spectrum(SectionSpec(1, "odd"), 0, cutoff)
    ref = neumann_disc_eigenvalues(cutoff)
    failed = []
    if len(got) != len(ref):
        failed.append(["count", len(got), len(ref)])
    worst = 0.0
    for (v, m), (w, mr) in zip(got, ref):
        err = abs(v - w)
        worst = max(worst, err)
        if not err < TOL_DISC or m != mr:
            failed.append([w, v, mr, m])
    return _result("flat_cone", len(ref), failed, max_error=worst, tol=TOL_DISC)


def check_proposition(p_max: int = 10) -> dict:
    failed = [p for p in range(1, p_max + 1) if not proposition_check(p)]
    return _result("proposition", p_max, failed, p=p_max)


def check_torsion_number() -> dict:
    rep = torsion_report(SectionSpec.from_sin_alpha(2, "odd", Fraction(1, 2)))
    expected = math.log(math.pi / 4) + 35 / 96
    err = abs(rep.log_T - expected)
    failed = [] if err < TOL_TORSION and rep.abm == Fraction(35, 96) else [[rep.log_T, expected]]
    return _result("torsion_number", 1, failed, value=rep.log_T, expected=expected, tol=TOL_TORSION)


CHECKS: dict[str, Callable[..., dict]] = {
    "M_eq_N": check_M_eq_N,
    "T_AB_eq_ABM": check_T_AB_eq_ABM,
    "representations": check_representations,
    "zeta_at_zero": check_zeta_at_zero,
    "identities": check_identities,
    "residue_consistency": check_residue_consistency,
    "closed_form": check_closed_form,
    "residues": check_residues,
    "even_p1": check_even_p1,
    "flat_cone": check_flat_cone,
    "proposition": check_proposition,
    "torsion_number": check_torsion_number,
}

# checks that accept a p_max override
P_MAX_CHECKS = {"M_eq_N", "T_AB_eq_ABM", "representations", "zeta_at_zero",
                "residue_consistency", "proposition"}


def run_checks(names=None, p_max: int | None = None) -> list[dict]:
    names = list(CHECKS) if not names else [n for n in CHECKS if n in set(names)]
    out = []
    for name in names:
        if p_max is not None and name in P_MAX_CHECKS:
            out.append(CHECKS[name](p_max=p_max))
        else:
            out.append(CHECKS[name]())
    return out
