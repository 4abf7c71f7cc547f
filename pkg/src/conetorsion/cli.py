"""Command-line front end: ``python3 -m conetorsion <command> [flags]``.

Exit status: 0 success, 1 usage or domain error, 2 numerical convergence
failure, 3 verification failure.  Errors print one line
``error: <kind>: <message>`` on stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction
from numbers import Real
from typing import Any

from . import __version__
from .anomaly import abm_even, abm_odd
from .cone import iter_abs_entries, merge_entries
from .errors import ConeTorsionError, ConvergenceError, InconsistencyError
from .exact import RationalPolynomial, as_rational, format_rational
from .sphere import SectionSpec
from .torsion import torsion_report
from .verify import CHECKS, run_checks
from .zeta import (
    convergence_abscissa,
    residue_U,
    zeta_U,
    zeta_U_at_zero,
    zeta_U_continued,
    zeta_U_top_closed_form,
)

SCHEMA = 1
EXIT_OK, EXIT_USAGE, EXIT_CONVERGENCE, EXIT_VERIFY = 0, 1, 2, 3
PRECISION_ENV = "CONETORSION_PRECISION"


class UsageError(Exception):
    kind = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rational(text: str) -> Fraction:
    try:
        return as_rational(text)
    except ConeTorsionError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def _precision(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0 < v < 1:
        raise argparse.ArgumentTypeError(f"precision must lie in (0, 1), got {v}")
    return v


def _default_precision() -> float:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return 1e-12
    try:
        return _precision(raw)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"{PRECISION_ENV}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--precision", type=_precision, default=None,
                        help=f"target relative error (default 1e-12 or ${PRECISION_ENV})")

    section = _Parser(add_help=False)
    section.add_argument("--p", type=_positive_int, required=True)
    section.add_argument("--parity", choices=("odd", "even"), default="odd")
    section.add_argument("--sin-alpha", type=_rational, default=Fraction(1))
    section.add_argument("--l", type=_rational, default=Fraction(1))

    parser = _Parser(prog="conetorsion", description="Analytic torsion of cones over spheres.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    sub.add_parser("torsion", parents=[common, section], help="log T of the cone (odd sections)")

    p_abm = sub.add_parser("abm", parents=[common, section], help="anomaly boundary polynomial")
    p_abm.add_argument("--representation", choices=("direct", "regrouped"), default="regrouped")

    p_spec = sub.add_parser("spectrum", parents=[common, section], help="cone spectrum below a cutoff")
    p_spec.add_argument("--q", type=_nonneg_int, required=True)
    p_spec.add_argument("--cutoff", type=float, required=True)
    p_spec.add_argument("--bc", choices=("abs", "rel"), default="abs")
    p_spec.add_argument("--budget", type=_positive_int, default=2_000_000)

    p_zeta = sub.add_parser("zeta", parents=[common, section], help="spectral zeta of the coexact sphere rows")
    p_zeta.add_argument("--what", choices=("value", "residue", "closed-form", "at-zero"), default="value")
    p_zeta.add_argument("--q", type=_nonneg_int, default=0)
    p_zeta.add_argument("--s", type=float, default=None)
    p_zeta.add_argument("--k", type=_nonneg_int, default=0)

    p_ver = sub.add_parser("verify", parents=[common], help="run the verification suites")
    p_ver.add_argument("--set", action="append", default=None,
                       help=f"check name(s), comma separated; one of {', '.join(CHECKS)}")
    p_ver.add_argument("--p-max", type=_positive_int, default=None)
    return parser


def _spec(args) -> SectionSpec:
    return SectionSpec.from_sin_alpha(args.p, args.parity, args.sin_alpha, args.l)


def _cmd_torsion(args) -> dict:
    spec = _spec(args)
    rep = torsion_report(spec, "abs")
    return {"p": spec.p, "sin_alpha": spec.sin_alpha, "l": spec.l,
            "half_log_vol": rep.half_log_vol, "abm": rep.abm,
            "log_T_abs": rep.log_T, "log_T_rel": torsion_report(spec, "rel").log_T}


def _cmd_abm(args) -> dict:
    spec = _spec(args)
    fn = abm_odd if spec.parity == "odd" else abm_even
    term = fn(spec.p, args.representation)
    return {"p": spec.p, "parity": spec.parity, "representation": args.representation,
            "poly": term.poly, "sin_alpha": spec.sin_alpha, "value": term(spec.sin_alpha)}


def _cmd_spectrum(args) -> dict:
    spec = _spec(args)
    degree = args.q if args.bc == "abs" else spec.m + 1 - args.q
    entries = iter_abs_entries(spec, degree, args.cutoff, args.budget)
    merged = merge_entries(entries)
    return {"p": spec.p, "parity": spec.parity, "sin_alpha": spec.sin_alpha, "l": spec.l,
            "q": args.q, "bc": args.bc, "cutoff": args.cutoff,
            "eigenvalues": [{"eigenvalue": v, "multiplicity": m} for v, m in merged],
            "rows": [{"eigenvalue": e.eigenvalue, "multiplicity": e.multiplicity,
                      "family-kind": e.kind, "mu": e.mu, "k": e.k}
                     for e in sorted(entries, key=lambda e: e.eigenvalue)]}


def _cmd_zeta(args) -> dict:
    spec = _spec(args)
    out: dict[str, Any] = {"p": spec.p, "parity": spec.parity, "sin_alpha": spec.sin_alpha}
    if args.what == "closed-form":
        if spec.parity != "odd":
            raise UsageError("the closed form is for odd sections")
        cf = zeta_U_top_closed_form(spec.p)
        out["closed_form"] = cf.to_json_obj()
        if args.s is not None:
            out["s"] = args.s
            out["value"] = cf.evaluate(args.s, spec.nu, args.precision)
        return out
    out["q"] = args.q
    if args.what == "at-zero":
        out["value"] = zeta_U_at_zero(spec.p, args.q)
    elif args.what == "residue":
        poly = residue_U(spec, args.q, args.k)
        out.update({"k": args.k, "pole": 2 * args.k + 1, "residue": poly, "value": poly(spec.sin_alpha)})
    else:
        if args.s is None:
            raise UsageError("--s is required for --what value")
        out["s"] = args.s
        if args.s > convergence_abscissa(spec, args.q):
            out["method"], out["value"] = "direct", zeta_U(spec, args.q, args.s, args.precision)
        else:
            out["method"] = "continued"
            out["value"] = float(zeta_U_continued(spec, args.q, args.s, args.precision))
    return out


def _cmd_verify(args) -> dict:
    names = None
    if args.set:
        names = [n.strip() for chunk in args.set for n in chunk.split(",") if n.strip()]
        unknown = [n for n in names if n not in CHECKS]
        if unknown:
            raise UsageError(f"unknown check(s): {', '.join(unknown)}")
    results = run_checks(names, args.p_max)
    return {"checks": results, "failures": sum(r["failures"] for r in results)}


COMMANDS = {"torsion": _cmd_torsion, "abm": _cmd_abm, "spectrum": _cmd_spectrum,
            "zeta": _cmd_zeta, "verify": _cmd_verify}


# ---------------------------------------------------------------------------
# serialization

def _real(x: float) -> float:
    return float(f"{x:.15g}")


def to_jsonable(obj):
    """Rationals -> exact strings, reals -> 15 significant digits, polynomials -> {exp: coeff}."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, RationalPolynomial):
        return obj.to_json_obj()
    if isinstance(obj, Real):
        x = float(obj)
        return _real(x) if math.isfinite(x) else str(x)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return float(obj) if hasattr(obj, "__float__") else str(obj)


def _cell(v) -> str:
    v = to_jsonable(v)
    if isinstance(v, float):
        return f"{v:.15g}"
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=False, separators=(",", ":"))
    return str(v)


def serialize(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(to_jsonable(report), indent=2) + "\n"
    rows = report.get("rows")
    if rows is None and "checks" in report:
        rows = report["checks"]
    scalars = {k: v for k, v in report.items() if k not in ("rows", "checks", "eigenvalues")}
    buf = io.StringIO()
    if fmt == "csv":
        w = csv.writer(buf, lineterminator="\n")
        if rows is not None:
            cols = list(dict.fromkeys(c for r in rows for c in r))
            w.writerow(cols)
            for r in rows:
                w.writerow([_cell(r[c]) if c in r else "" for c in cols])
        else:
            w.writerow(["key", "value"])
            for k, v in scalars.items():
                w.writerow([k, _cell(v)])
        return buf.getvalue()
    for k, v in scalars.items():
        if isinstance(v, RationalPolynomial):
            v = v.format("u")
        buf.write(f"{k}: {_cell(v)}\n")
    if "eigenvalues" in report:
        buf.write("eigenvalue multiplicity\n")
        for r in report["eigenvalues"]:
            buf.write(f"{_cell(r['eigenvalue'])} {r['multiplicity']}\n")
    elif rows is not None:
        for r in rows:
            buf.write(" ".join(f"{c}={_cell(v)}" for c, v in r.items()) + "\n")
    return buf.getvalue()


def run(argv=None) -> tuple[int, str, str]:
    """Returns (exit status, stdout text, stderr text)."""
    try:
        args = build_parser().parse_args(argv)
        if args.precision is None:
            args.precision = _default_precision()
        body = COMMANDS[args.command](args)
        report = {"schema": SCHEMA, "command": args.command, **body}
        status = EXIT_VERIFY if args.command == "verify" and body["failures"] else EXIT_OK
        return status, serialize(report, args.format), ""
    except UsageError as exc:
        return EXIT_USAGE, "", f"error: usage: {exc}\n"
    except ConvergenceError as exc:
        return EXIT_CONVERGENCE, "", f"error: {exc.kind}: {exc}\n"
    except InconsistencyError as exc:
        return EXIT_VERIFY, "", f"error: {exc.kind}: {exc}\n"
    except ConeTorsionError as exc:
        return EXIT_USAGE, "", f"error: {exc.kind}: {exc}\n"


def main(argv=None) -> int:
    try:
        status, out, err = run(argv)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    sys.stdout.write(out)
    sys.stderr.write(err.replace("\n", " ").rstrip() + "\n" if err else "")
    return status


if __name__ == "__main__":
    sys.exit(main())
