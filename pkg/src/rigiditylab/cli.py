"""Command-line front end.

Subcommands: theta, verify, rigidity, modularity, qexpand.
Exit codes: 0 pass, 1 verdict failed, 2 usage or parse error, 3 fixture or I/O error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor

from . import char_series, transform_suite
from .errors import DomainError, FixtureError, PoleProximityError
from .fixture_io import fixture_to_dict, load_fixture
from .lefschetz_core import (
    anomaly_report,
    lefschetz_qexpansion,
    modular_image_residual,
    periodicity_residual,
    rigidity_check,
    tau_shift_prediction_residual,
)
from .theta_engine import DEFAULT_EPS, ThetaKind, theta_eval

EXIT_OK, EXIT_VERDICT, EXIT_USAGE, EXIT_FIXTURE = 0, 1, 2, 3

SUITES = {
    "translations": (transform_suite.translation_suite, 1e-10),
    "modular": (transform_suite.modular_suite, 1e-9),
    "jacobi": (transform_suite.jacobi_suite, 1e-10),
    "chseries": (char_series.chseries_suite, 1e-9),
}

# point used for the periodicity residuals of the rigidity report
REPORT_POINT = (0.23 + 0.05j, -0.21 + 0.95j)


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    """Parse "a+bi", "bi", "a", "i", "-i" and the like."""
    s = text.strip().replace(" ", "")
    if not s:
        raise UsageError("empty complex number")
    s = re.sub(r"(^|[+-])i$", r"\g<1>1i", s)
    try:
        return complex(s.replace("i", "j"))
    except ValueError:
        raise UsageError(f"cannot parse complex number {text!r}") from None


def format_complex(z: complex, digits: int = 15) -> str:
    re_s = f"{z.real:.{digits}g}"
    if z.imag == 0:
        return re_s
    return f"{re_s}{z.imag:+.{digits}g}i"


def thread_count() -> int:
    raw = os.environ.get("RIGIDITYLAB_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        n = os.cpu_count() or 1
    return max(1, n)


def _ordered_map(fn, items):
    """map in a thread pool, results in input order."""
    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# subcommands


def cmd_theta(args) -> int:
    v, tau = parse_complex(args.v), parse_complex(args.tau)
    kind = ThetaKind(args.kind)
    print(format_complex(theta_eval(kind, v, tau, args.eps)))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    fn, default_tol = SUITES[args.suite]
    tol = default_tol if args.tol is None else args.tol
    worst = fn(args.samples, args.seed)
    ok = worst < tol
    print(f"suite={args.suite} samples={args.samples} seed={args.seed} "
          f"max_residual={worst:.3e} tol={tol:.1e} {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_VERDICT


def _anomaly_dict(f) -> dict:
    rep = anomaly_report(f)
    return {
        "components": [{"sum_m2": c.sum_m2, "sum_mb": c.sum_mb} for c in rep.components],
        "rigid_condition_met": rep.rigid_condition_met,
        "uniform_anomaly": rep.uniform_anomaly,
    }


def _residuals_dict(lam, f) -> dict:
    t, tau = REPORT_POINT
    out = {"t": format_complex(t), "tau": format_complex(tau)}
    try:
        r1, r2 = periodicity_residual(lam, f, t, tau)
        out.update(r1=r1, r2=r2, tau_shift_prediction=tau_shift_prediction_residual(lam, f, t, tau))
    except PoleProximityError:
        out["skipped"] = "pole proximity"
    return out


def rigidity_document(f, lam: int, K: int) -> tuple[dict, bool]:
    report = rigidity_check(lefschetz_qexpansion(lam, f, K))
    orders = [
        {
            "k": o.k,
            "is_laurent": o.is_laurent,
            "is_constant": o.is_constant,
            "constant": None if o.constant_value is None else str(o.constant_value),
            "coefficient": o.coefficient.to_text(),
        }
        for o in report.orders
    ]
    doc = {
        "fixture": fixture_to_dict(f),
        "lambda": lam,
        "K": K,
        "orders": orders,
        "anomaly": _anomaly_dict(f),
        "residuals": _residuals_dict(lam, f),
    }
    return doc, report.all_constant


def _verdict(order: dict) -> str:
    if order["is_constant"]:
        return "constant"
    return "laurent" if order["is_laurent"] else "non_laurent"


def cmd_rigidity(args) -> int:
    f = load_fixture(args.fixture)
    doc, ok = rigidity_document(f, args.lam, args.K)
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["order", "verdict", "constant"])
        for o in doc["orders"]:
            w.writerow([o["k"], _verdict(o), "" if o["constant"] is None else o["constant"]])
        sys.stdout.write(buf.getvalue())
    return EXIT_OK if ok else EXIT_VERDICT


def modularity_grid(n: int) -> list[tuple[complex, complex]]:
    """n x n grid of (t, tau); real parts of t avoid n t in Z for |n| <= 12 and
    the imaginary offset keeps t off every lattice (1/n)(Z + tau Z)."""
    ts = [complex(0.07 + 0.173 * j, 0.05) for j in range(n)]
    span = max(n - 1, 1)
    taus = [complex(-0.4 + 0.8 * k / span, 0.7 + 0.8 * k / span) for k in range(n)]
    return [(t, tau) for tau in taus for t in ts]


def cmd_modularity(args) -> int:
    f = load_fixture(args.fixture)
    lams = [args.lam] if args.lam else [1, 2, 3]
    jobs = [(lam, t, tau) for lam in lams for (t, tau) in modularity_grid(args.grid)]

    def run(job):
        lam, t, tau = job
        try:
            return modular_image_residual(lam, f, t, tau, args.g)
        except PoleProximityError:
            return None

    results = _ordered_map(run, jobs)
    rep = anomaly_report(f)
    computed = [r for r in results if r is not None]
    worst = max(computed) if computed else 0.0
    ok = worst < args.tol
    buf = io.StringIO()
    buf.write(f"# fixture={f.name} g={args.g} tol={args.tol:.1e} "
              f"anomaly={'none' if rep.rigid_condition_met else 'present, per-component factors applied'}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["lambda", "t", "tau", "residual"])
    for (lam, t, tau), r in zip(jobs, results):
        w.writerow([lam, format_complex(t, 6), format_complex(tau, 6), "skipped" if r is None else f"{r:.3e}"])
    buf.write(f"# max_residual={worst:.3e} {'PASS' if ok else 'FAIL'}\n")
    sys.stdout.write(buf.getvalue())
    return EXIT_OK if ok else EXIT_VERDICT


def cmd_qexpand(args) -> int:
    f = load_fixture(args.fixture)
    series = lefschetz_qexpansion(args.lam, f, args.K)
    if args.format == "json":
        print(json.dumps({"fixture": f.name, "lambda": args.lam, "K": args.K,
                          "coefficients": [c.to_text() for c in series.coeffs]}, indent=2))
    else:
        for k, c in enumerate(series.coeffs):
            print(f"k={k}: {c.to_text()}")
    return EXIT_OK


# ---------------------------------------------------------------------------


COMPLEX_FLAGS = ("--v", "--tau")


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--tau -1i`` into ``--tau=-1i`` so argparse does not read the
    value as an option."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in COMPLEX_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rigiditylab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("theta", help="evaluate a theta function")
    s.add_argument("--kind", choices=[k.value for k in ThetaKind], required=True)
    s.add_argument("--v", required=True, help='complex, e.g. "0.1+0.2i"')
    s.add_argument("--tau", required=True, help='complex with positive imaginary part, e.g. "1i"')
    s.add_argument("--eps", type=float, default=DEFAULT_EPS)
    s.set_defaults(func=cmd_theta)

    s = sub.add_parser("verify", help="run a seeded identity suite")
    s.add_argument("--suite", required=True, help="translations, modular, jacobi or chseries")
    s.add_argument("--samples", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--tol", type=float, default=None)
    s.set_defaults(func=cmd_verify)

    for name, fn, helptext in (("rigidity", cmd_rigidity, "exact rigidity report"),
                               ("qexpand", cmd_qexpand, "exact q-expansion coefficients")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("--fixture", required=True, help="fixture JSON path or bundled name")
        s.add_argument("--lambda", dest="lam", type=int, choices=[1, 2, 3], default=2)
        s.add_argument("--K", type=int, default=4)
        s.add_argument("--format", choices=["json", "csv"] if name == "rigidity" else ["text", "json"],
                       default="json" if name == "rigidity" else "text")
        s.set_defaults(func=fn)

    s = sub.add_parser("modularity", help="S or T transformation residuals on a grid")
    s.add_argument("--fixture", required=True)
    s.add_argument("--lambda", dest="lam", type=int, choices=[1, 2, 3], default=None,
                   help="default: all three")
    s.add_argument("--g", choices=["S", "T"], required=True)
    s.add_argument("--grid", type=int, default=5, help="N for an N x N (t, tau) grid")
    s.add_argument("--tol", type=float, default=1e-8)
    s.set_defaults(func=cmd_modularity)
    return p


def main(argv=None) -> int:
    try:
        argv = sys.argv[1:] if argv is None else list(argv)
        args = build_parser().parse_args(_glue_negative_values(argv))
        if getattr(args, "K", 0) < 0 or getattr(args, "grid", 1) < 1 or getattr(args, "samples", 1) < 0:
            raise UsageError("K, grid and samples must be nonnegative (grid positive)")
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FixtureError as exc:
        print(f"fixture error: {exc}", file=sys.stderr)
        return EXIT_FIXTURE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
