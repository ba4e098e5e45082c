"""Command-line front end.

Every command computes its full output before writing anything, so a domain
error (exit 2) never leaves partial output behind. Numbers are written with
12 significant digits; CSV is the default and ``--format json`` switches to a
JSON document carrying ``schema_version``.
"""

from __future__ import annotations

import argparse
import io
import json
import sys

import numpy as np

from . import qubit_algebra
from .bound_engine import (
    SQRT1_2,
    Overlap,
    SweepSpec,
    alpha_star,
    bound_sweep,
    diagonal_branches,
    tight_bound,
)
from .verification import run_verification

SCHEMA_VERSION = 1
CLI_UNITARY_TOL = 1e-9

TABLE1_C = (0.71, 0.73, 0.75, 0.77, 0.79, 0.81, 0.83, 0.85,
            0.87, 0.89, 0.91, 0.93, 0.95, 0.97, 0.99)
TABLE1_PUBLISHED = (1.411, 1.317, 1.249, 1.185, 1.124, 1.065, 1.009, 0.955,
                    0.903, 0.852, 0.801, 0.751, 0.699, 0.644, 0.576)

FIG2A_ALPHAS = (0.25, 0.5, 1.0, 2.0, 4.0)
FIG2B_CS = (0.75, 0.8, 0.85, 0.9, 0.95)
FIG2B_ALPHA_MAX = 2.0
FIG3_INDEX_MAX = 2.0
DEFAULT_POINTS = {"1": 50, "2a": 100, "2b": 100, "3": 41}


class UsageError(ValueError):
    pass


# --- output -----------------------------------------------------------------

def _num(x):
    return f"{x:.12g}"


def _csv_field(v):
    if v is None:
        return ""
    if isinstance(v, (list, tuple)):
        return ";".join(_csv_field(x) for x in v)
    if isinstance(v, (float, np.floating)):
        return _num(float(v))
    return str(v)


def _json_value(v):
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    if isinstance(v, (float, np.floating)):
        return float(_num(float(v)))
    if isinstance(v, np.integer):
        return int(v)
    return v


def render(command, columns, rows, fmt):
    """Serialize ``rows`` (sequences aligned with ``columns``) to text."""
    if fmt == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "columns": list(columns),
            "rows": [{k: _json_value(v) for k, v in zip(columns, row)} for row in rows],
        }
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(_csv_field(v) for v in row) + "\n")
    return buf.getvalue()


def _emit(text, out=None):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


# --- argument helpers ---------------------------------------------------------

def _overlap_from_args(args):
    if args.c is not None:
        return Overlap.from_c(args.c)
    return Overlap.from_gamma_t(args.gamma_t)


def parse_unitary(text):
    """``"r,i;r,i;r,i;r,i"`` (row-major) -> 2x2 complex matrix."""
    entries = text.split(";")
    if len(entries) != 4:
        raise UsageError("--unitary needs four 'real,imag' entries separated by ';'")
    vals = []
    for e in entries:
        parts = e.split(",")
        if len(parts) != 2:
            raise UsageError(f"bad unitary entry {e!r}; expected 'real,imag'")
        try:
            vals.append(complex(float(parts[0]), float(parts[1])))
        except ValueError:
            raise UsageError(f"bad unitary entry {e!r}") from None
    t = np.array(vals, dtype=complex).reshape(2, 2)
    qubit_algebra.check_unitary(t, CLI_UNITARY_TOL)
    # snap to the nearest unitary so downstream checks at 1e-12 accept it
    w, _, vh = np.linalg.svd(t)
    return w @ vh


def _positive_int(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return n


def _float_list(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


# --- commands -----------------------------------------------------------------

def cmd_bound(args):
    ov = _overlap_from_args(args)
    res = tight_bound(args.alpha, args.beta, ov)
    cols = ("alpha", "beta", "c", "gamma", "value", "regime", "theta_opt")
    row = (res.alpha, res.beta, ov.c, ov.gamma, res.value, res.regime.value, list(res.theta_opt))
    _emit(render("bound", cols, [row], args.format))
    return 0


def cmd_table1(args):
    cs = TABLE1_C if args.c_list is None else tuple(args.c_list)
    if not cs:
        raise UsageError("--c-list is empty")
    for c in cs:
        if not SQRT1_2 < c < 1:
            raise UsageError(f"c must lie in (1/sqrt(2), 1), got {c!r}")
    published = dict(zip(TABLE1_C, TABLE1_PUBLISHED))
    rows = []
    for c in cs:
        a = alpha_star(Overlap.from_c(c), tol=args.tol)
        ref = published.get(c)
        rows.append((c, a, ref, None if ref is None else a - ref))
    _emit(render("table1", ("c", "alpha_star", "published", "difference"), rows, args.format))
    return 0


def _figure_1(n):
    cs = np.linspace(SQRT1_2, 1.0, n + 1)[:-1]
    rows = [(float(c), alpha_star(Overlap.from_c(c))) for c in cs]
    return ("c", "alpha_star"), rows


def _figure_2a(n):
    cs = np.linspace(SQRT1_2, 1.0, n)
    rows = []
    for a in FIG2A_ALPHAS:
        for c in cs:
            first, half = diagonal_branches(a, Overlap.from_c(c))
            rows.append((a, float(c), first, half))
    return ("alpha", "c", "branch_first", "branch_half_gamma"), rows


def _figure_2b(n):
    alphas = np.linspace(0.0, FIG2B_ALPHA_MAX, n)
    rows = []
    for c in FIG2B_CS:
        ov = Overlap.from_c(c)
        for r in bound_sweep(SweepSpec("diagonal", alphas, c=c)):
            rows.append((c, r.x, min(r.theta_opt), ov.gamma / 2, r.regime.value))
    return ("c", "alpha", "theta_opt", "half_gamma", "regime"), rows


def region_label(alpha, beta):
    """Which closed form covers ``(alpha, beta)``; elsewhere only the
    ``max(alpha, beta)`` diagonal bound is available in closed form."""
    if alpha <= 0.5 and beta <= 0.5:
        return "tight-analytic"
    if alpha == beta:
        return "tight-semianalytic"
    return "suboptimal"


def _figure_3(n):
    grid = [round(float(x), 12) for x in np.linspace(0.0, FIG3_INDEX_MAX, n)]
    rows = [(a, b, region_label(a, b)) for a in grid for b in grid]
    return ("alpha", "beta", "region"), rows


FIGURES = {"1": _figure_1, "2a": _figure_2a, "2b": _figure_2b, "3": _figure_3}


def cmd_figure(args):
    n = args.points if args.points is not None else DEFAULT_POINTS[args.which]
    if n < 2:
        raise UsageError("--points must be at least 2")
    cols, rows = FIGURES[args.which](n)
    _emit(render(f"figure-{args.which}", cols, rows, args.format), args.out)
    return 0


def cmd_minimizers(args):
    if args.unitary is not None:
        t = parse_unitary(args.unitary)
        ov = qubit_algebra.overlap_of(t)
    else:
        ov = Overlap.from_c(args.c)
        t = qubit_algebra.rotation(ov.gamma)
    res = tight_bound(args.alpha, args.beta, ov)
    family = qubit_algebra.minimizer_states(t, res)
    rows = []
    for k, st in enumerate(family.states):
        psi = st.psi
        rows.append((k, st.theta, st.n,
                     float(psi[0].real), float(psi[0].imag),
                     float(psi[1].real), float(psi[1].imag),
                     qubit_algebra.entropy_sum_of_state(psi, t, res.alpha, res.beta),
                     qubit_algebra.landau_pollak_residual(psi, t),
                     res.value))
    cols = ("index", "theta", "n", "psi1_re", "psi1_im", "psi2_re", "psi2_im",
            "entropy_sum", "lp_residual", "bound")
    _emit(render("minimizers", cols, rows, args.format))
    return 0


def cmd_verify(args):
    report = run_verification(args.samples, args.seed)
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.report is not None:
        _emit(text, args.report)
    rows = [(name, "PASS" if s["passed"] else "FAIL", s["metric"], s["worst"], len(s["failures"]))
            for name, s in report["suites"].items()]
    found = report["findings"]
    rows.append(("minimizer_cross_check", "INFO", "cross_distance",
                 found["worst_cross_distance"], len(found["minimizers_outside_family"])))
    _emit(render("verify", ("suite", "status", "metric", "worst", "failures"), rows, "csv"))
    return 0 if report["passed"] else 1


# --- parser -------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(
        prog="renyi-qubit",
        description="Tight Renyi-entropy uncertainty bounds for pairs of qubit observables.")
    sub = p.add_subparsers(dest="command", required=True)

    def add_format(sp):
        sp.add_argument("--format", choices=("csv", "json"), default="csv")

    b = sub.add_parser("bound", help="bound for one (alpha, beta, overlap)")
    b.add_argument("--alpha", type=float, required=True)
    b.add_argument("--beta", type=float, required=True)
    g = b.add_mutually_exclusive_group(required=True)
    g.add_argument("--c", type=float, help="overlap max|<b|a>| in [1/sqrt(2), 1]")
    g.add_argument("--gamma-t", type=float, help="rotation angle in [0, pi/2]")
    add_format(b)
    b.set_defaults(func=cmd_bound)

    t = sub.add_parser("table1", help="transition index alpha*(c) on a grid of overlaps")
    t.add_argument("--c-list", type=_float_list, default=None,
                   help="comma-separated overlaps in (1/sqrt(2), 1)")
    t.add_argument("--tol", type=float, default=1e-10,
                   help="bisection bracket width for alpha* (default 1e-10)")
    add_format(t)
    t.set_defaults(func=cmd_table1)

    f = sub.add_parser("figure", help="curve and region data for plotting")
    f.add_argument("--which", choices=tuple(FIGURES), required=True)
    f.add_argument("--points", type=int, default=None)
    f.add_argument("--out", default=None, help="write to FILE instead of stdout")
    add_format(f)
    f.set_defaults(func=cmd_figure)

    m = sub.add_parser("minimizers", help="states that attain the bound")
    m.add_argument("--alpha", type=float, required=True)
    m.add_argument("--beta", type=float, required=True)
    g = m.add_mutually_exclusive_group(required=True)
    g.add_argument("--unitary", help="row-major entries 'r,i;r,i;r,i;r,i'")
    g.add_argument("--c", type=float)
    add_format(m)
    m.set_defaults(func=cmd_minimizers)

    v = sub.add_parser("verify", help="randomized checks against the brute-force oracle")
    v.add_argument("--samples", type=_positive_int, default=200)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--report", default=None, help="write the JSON report to FILE")
    v.set_defaults(func=cmd_verify)
    return p


def _glue_unitary(argv):
    # a matrix spec such as "-0.5,0.1;..." would otherwise be read as a flag
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--unitary":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--unitary={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(_glue_unitary(sys.argv[1:] if argv is None else list(argv)))
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"renyi-qubit {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"renyi-qubit {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
