"""Command-line front end.

    clampspline build DATA --left-deriv A --right-deriv B [--out FILE] [--samples N]
    clampspline compare DATA --left1 A --right1 B --left2 C --right2 D
    clampspline mono DATA --left-deriv A --right-deriv B
    clampspline prop42 (DATA | --search N SEED) [--i0 I] [--resolution R]
    clampspline converge --function sin --interval 0 3 --levels 6 --p 3 --perturb 1

Exit status: 0 on success (including "hypotheses not met"), 1 when a bound
or verification fails, 2 on usage and input errors.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from typing import Sequence

import numpy as np

from . import io as sio
from .bounds import certify_pair_bound, convergence_study, study_csv_rows
from .monotonicity import (
    fritsch_carlson_necessary,
    piece_is_monotone,
    prop42_check_hypotheses,
    prop42_search,
    prop42_verify,
)
from .spline_core import (
    Partition,
    SplineInput,
    build_spline,
    evaluate,
    evaluate_derivative,
    evaluate_second_derivative,
)

SAMPLES_ENV = "CLAMPSPLINE_SAMPLES"
DEFAULT_SAMPLES_PER_PIECE = 1000

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _default_samples() -> int:
    raw = os.environ.get(SAMPLES_ENV)
    if raw is None:
        return DEFAULT_SAMPLES_PER_PIECE
    try:
        v = int(raw)
    except ValueError:
        raise UsageError(f"{SAMPLES_ENV}={raw!r} is not an integer")
    if v < 2:
        raise UsageError(f"{SAMPLES_ENV} must be at least 2")
    return v


def _load(path: str, left: float, right: float, stdin) -> SplineInput:
    x, f = sio.read_data(path, stdin)
    return SplineInput(Partition(x), f, left, right)


def _fmt(v) -> str:
    return repr(float(v))


def cmd_build(args, out, stdin) -> int:
    data = _load(args.data, args.left_deriv, args.right_deriv, stdin)
    spline = build_spline(data)
    text = sio.dumps(sio.spline_to_dict(spline))
    if args.samples is not None and args.out in (None, "-") and args.samples_out in (None, "-"):
        raise UsageError("--samples to stdout needs --out FILE for the JSON (or --samples-out FILE)")
    if args.out in (None, "-"):
        out.write(text + "\n")
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if args.samples is not None:
        if args.samples < 2:
            raise UsageError("--samples must be at least 2")
        xs = np.linspace(spline.knots[0], spline.knots[-1], args.samples)
        rows = zip(xs, evaluate(spline, xs), evaluate_derivative(spline, xs),
                   evaluate_second_derivative(spline, xs))
        target = args.samples_out
        fh = out if target in (None, "-") else open(target, "w", newline="", encoding="utf-8")
        try:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["x", "P", "dP", "d2P"])
            for r in rows:
                w.writerow([_fmt(v) for v in r])
        finally:
            if fh is not out:
                fh.close()
    return EXIT_OK


def cmd_compare(args, out, stdin) -> int:
    data = _load(args.data, args.left1, args.right1, stdin)
    per_piece = args.samples_per_piece or _default_samples()
    rep = certify_pair_bound(data, args.left2 - args.left1, args.right2 - args.right1, per_piece)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["piece", "bound", "measured", "status"])
    for r in rep.rows:
        if r.bound is None:
            w.writerow([r.piece, "n/a (bound not claimed)", _fmt(r.measured), "n/a"])
        else:
            w.writerow([r.piece, _fmt(r.bound), _fmt(r.measured), "ok" if r.ok else "VIOLATED"])
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_mono(args, out, stdin) -> int:
    data = _load(args.data, args.left_deriv, args.right_deriv, stdin)
    spline = build_spline(data)
    direction = args.direction
    if direction == "auto":
        direction = "nondecreasing" if data.values[-1] >= data.values[0] else "nonincreasing"
    pieces = []
    first_bad = None
    for i in range(1, spline.n):
        p = spline.piece(i)
        scale = max(abs(p.left_derivative), abs(p.right_derivative), abs(p.slope), 1.0)
        fc = fritsch_carlson_necessary(p.left_derivative, p.right_derivative, p.slope, 1e-12 * scale)
        mono = piece_is_monotone(p, direction)
        if not mono and first_bad is None:
            first_bad = i
        pieces.append({"piece": i, "fritsch_carlson_necessary": fc, "monotone": mono})
    report = {
        "direction": direction,
        "monotone": first_bad is None,
        "first_offending_piece": first_bad,
        "pieces": pieces,
    }
    out.write(sio.dumps(report) + "\n")
    return EXIT_OK


def cmd_prop42(args, out, stdin) -> int:
    search = None
    if args.search is not None:
        n, seed = args.search
        try:
            search = prop42_search(seed, n, args.attempts)
        except ValueError as exc:
            out.write(sio.dumps({"status": "hypothesis_error", "message": str(exc)}) + "\n")
            return EXIT_OK
        if not search.found:
            out.write(sio.dumps({"status": search.status, "attempts": search.attempts_used}) + "\n")
            return EXIT_OK
        data, i0 = search.data, search.i0
    else:
        if args.data is None:
            raise UsageError("give a data file or --search N SEED")
        data = _load(args.data, args.left_deriv, args.right_deriv, stdin)
        i0 = args.i0
    if i0 is None:
        # first piece that meets every hypothesis, else report the first overshooting one
        i0 = 2
        for cand in range(2, max(data.n - 2, 3)):
            if prop42_check_hypotheses(data, cand).hypotheses_met:
                i0 = cand
                break
    if not 1 <= i0 <= data.n - 1:
        raise UsageError(f"--i0 must lie in 1..{data.n - 1}")
    report = prop42_verify(data, i0, args.resolution)
    payload = report.to_dict()
    if search is not None:
        payload["search"] = {
            "attempts": search.attempts_used,
            "knots": data.partition.knots.tolist(),
            "values": data.values.tolist(),
            "left_derivative": data.left_derivative,
            "right_derivative": data.right_derivative,
        }
    out.write(sio.dumps(payload) + "\n")
    return EXIT_FAIL if report.status == "verification_failed" else EXIT_OK


def _test_function(name: str, coeffs: Sequence[float] | None):
    if name == "sin":
        return np.sin, np.cos
    if name == "exp":
        return np.exp, np.exp
    if name == "poly":
        if not coeffs:
            raise UsageError("--function poly needs --coeffs c0 c1 ...")
        p = np.polynomial.Polynomial(coeffs)
        return p, p.deriv()
    raise UsageError(f"unknown function {name!r}")


def cmd_converge(args, out, stdin) -> int:
    f, df = _test_function(args.function, args.coeffs)
    a, b = args.interval
    if not b > a:
        raise UsageError("--interval needs a < b")
    rows = convergence_study(
        f, lambda t: float(df(t)), (a, b), args.levels, args.p,
        perturb_left=args.perturb, perturb_right=args.perturb_right,
        base_intervals=args.base_intervals,
    )
    w = csv.writer(out, lineterminator="\n")
    w.writerows(study_csv_rows(rows))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clampspline",
        description="Clamped cubic splines: construction, boundary sensitivity and monotonicity.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a spline and write it as JSON")
    p.add_argument("data", help="CSV file of x,f rows ('-' for stdin)")
    p.add_argument("--left-deriv", type=float, required=True)
    p.add_argument("--right-deriv", type=float, required=True)
    p.add_argument("--out", help="JSON output file (default stdout)")
    p.add_argument("--samples", type=int, help="emit N equispaced x,P,dP,d2P rows")
    p.add_argument("--samples-out", help="CSV file for --samples (default stdout)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("compare", help="pair bound vs measured difference per piece")
    p.add_argument("data")
    for flag in ("--left1", "--right1", "--left2", "--right2"):
        p.add_argument(flag, type=float, required=True)
    p.add_argument("--samples-per-piece", type=int,
                   help=f"default {DEFAULT_SAMPLES_PER_PIECE} or ${SAMPLES_ENV}")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("mono", help="per-piece monotonicity report")
    p.add_argument("data")
    p.add_argument("--left-deriv", type=float, required=True)
    p.add_argument("--right-deriv", type=float, required=True)
    p.add_argument("--direction", choices=["auto", "nondecreasing", "nonincreasing"], default="auto")
    p.set_defaults(func=cmd_mono)

    p = sub.add_parser("prop42", help="endpoint-derivative obstruction report")
    p.add_argument("data", nargs="?")
    p.add_argument("--search", nargs=2, type=int, metavar=("N", "SEED"))
    p.add_argument("--attempts", type=int, default=10_000)
    p.add_argument("--left-deriv", type=float, default=0.0)
    p.add_argument("--right-deriv", type=float, default=0.0)
    p.add_argument("--i0", type=int)
    p.add_argument("--resolution", type=int, default=101)
    p.set_defaults(func=cmd_prop42)

    p = sub.add_parser("converge", help="interior convergence-order study (CSV)")
    p.add_argument("--function", choices=["sin", "exp", "poly"], default="sin")
    p.add_argument("--coeffs", type=float, nargs="+", help="polynomial coefficients, lowest first")
    p.add_argument("--interval", type=float, nargs=2, default=(0.0, 3.0), metavar=("A", "B"))
    p.add_argument("--levels", type=int, default=6)
    p.add_argument("--p", type=float, default=1.0)
    p.add_argument("--perturb", type=float, default=1.0, help="added to f'(a)")
    p.add_argument("--perturb-right", type=float, default=0.0, help="added to f'(b)")
    p.add_argument("--base-intervals", type=int, default=10)
    p.set_defaults(func=cmd_converge)
    return parser


def main(argv: Sequence[str] | None = None, out=None, stdin=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out, stdin)
    except (UsageError, ValueError, IndexError, OSError) as exc:
        print(f"clampspline {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
