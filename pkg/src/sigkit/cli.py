"""Command-line front end.

Subcommands ``exact``, ``mc``, ``curve`` and ``convergence`` print plain CSV
(one header row, ``.`` decimals, ``\\n`` rows).  Exit codes: 0 success,
2 usage error, 3 enumeration budget exceeded, 4 output not writable.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import os
import sys

import numpy as np

from .agreement import lookup_measure
from .compositions import composition_count
from .errors import BudgetExceeded, SigkitError, UnknownMeasure
from .exact import DEFAULT_BUDGET, exact_curve, exact_varrho
from .montecarlo import (
    MC_CONFUSION,
    MAX_DEFAULT_SAMPLES,
    MC_PROBABILITY,
    confusion_values,
    default_samples,
    mc_curve,
    mc_rho,
    mc_varrho,
    probability_values,
)
from .rng import SEED_MASK

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_IO = 4

DEFAULT_POINTS = 101
DEFAULT_CONVERGENCE_SAMPLES = 10**5


class UsageError(Exception):
    pass


class OutputError(Exception):
    pass


def fmt_value(v: float) -> str:
    return format(float(v), ".6g")


def fmt_c(c: float) -> str:
    return format(float(c), ".10g")


def budget_from_env() -> int:
    raw = os.environ.get("SIGKIT_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"SIGKIT_BUDGET must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise UsageError(f"SIGKIT_BUDGET must be a positive integer, got {raw!r}")
    return value


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _seed(text):
    v = int(text)
    if not 0 <= v <= SEED_MASK:
        raise argparse.ArgumentTypeError(f"seed must fit in an unsigned 64-bit integer, got {text}")
    return v


def _int_list(text):
    try:
        values = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError(f"expected positive integers, got {text!r}")
    return values


def parse_grid(text):
    """``lo:hi:points`` for an even grid, or an explicit comma-separated list."""
    try:
        if ":" in text:
            lo, hi, points = text.split(":")
            lo, hi, points = float(lo), float(hi), int(points)
            if points < 1 or (points > 1 and not lo < hi):
                raise ValueError
            return np.linspace(lo, hi, points).tolist()
        values = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad threshold grid {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("threshold grid is empty")
    return values


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--measure", required=True, help="agreement measure: kappa or ia")
    common.add_argument("--n", type=_positive, required=True, help="number of classes")
    common.add_argument("--seed", type=_seed, default=0)
    common.add_argument("--workers", type=_positive, default=1)
    common.add_argument("--out", default="-", help="output path (default: standard output)")

    parser = argparse.ArgumentParser(
        prog="sigkit", description="Significativity indices for agreement values."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", parents=[common], help="exact index by full enumeration")
    p.add_argument("--m", type=_positive, required=True, help="number of tests")
    p.add_argument("--c", type=float, required=True, help="agreement threshold")

    p = sub.add_parser("mc", parents=[common], help="Monte Carlo estimate")
    p.add_argument("--m", type=_positive, help="number of tests; omit for the probability-matrix index")
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--samples", type=_positive)

    p = sub.add_parser("curve", parents=[common], help="index over an even grid of thresholds")
    p.add_argument("--m", type=_positive)
    p.add_argument("--c-min", type=float)
    p.add_argument("--c-max", type=float)
    p.add_argument("--points", type=int, default=DEFAULT_POINTS)
    p.add_argument("--method", choices=("exact", "mc"))
    p.add_argument("--samples", type=_positive)

    p = sub.add_parser("convergence", parents=[common], help="probability index minus confusion index, per m")
    p.add_argument("--c-grid", type=parse_grid, help="lo:hi:points or c1,c2,... (default: measure range, 101 points)")
    p.add_argument("--m-list", type=_int_list, default=[10, 100, 1000])
    p.add_argument("--samples", type=_positive, default=DEFAULT_CONVERGENCE_SAMPLES)
    return parser


@contextlib.contextmanager
def open_output(path):
    if path == "-":
        yield sys.stdout
        return
    try:
        fh = open(path, "w", newline="", encoding="ascii")
    except OSError as exc:
        raise OutputError(str(exc)) from exc
    with fh:
        yield fh


def write_rows(path, header, rows):
    with open_output(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def cmd_exact(args):
    sigma = lookup_measure(args.measure)
    r = exact_varrho(sigma, args.n, args.m, args.c, budget=budget_from_env(), workers=args.workers)
    write_rows(
        args.out,
        ["measure", "n", "m", "c", "value", "numerator", "denominator"],
        [[sigma.name, args.n, args.m, fmt_c(args.c), fmt_value(r.value), r.numerator, r.denominator]],
    )


def cmd_mc(args):
    sigma = lookup_measure(args.measure)
    if args.m is None:
        est = mc_rho(sigma, args.n, args.c, N=args.samples, seed=args.seed, workers=args.workers)
        m_field = "-"
    else:
        est = mc_varrho(sigma, args.n, args.m, args.c, N=args.samples, seed=args.seed, workers=args.workers)
        m_field = args.m
    write_rows(
        args.out,
        ["measure", "n", "m", "c", "value", "std_error", "N", "seed"],
        [[sigma.name, args.n, m_field, fmt_c(args.c), fmt_value(est.value),
          fmt_value(est.std_error), est.n_samples, est.seed]],
    )


def cmd_curve(args):
    sigma = lookup_measure(args.measure)
    c_min = sigma.range_min if args.c_min is None else args.c_min
    c_max = sigma.range_max if args.c_max is None else args.c_max
    if not c_min < c_max:
        raise UsageError(f"--c-min must be below --c-max, got {c_min} and {c_max}")
    if args.points < 2:
        raise UsageError(f"--points must be at least 2, got {args.points}")
    method = args.method or ("exact" if args.m is not None else "mc")
    if method == "exact" and args.m is None:
        raise UsageError("--method exact needs --m (the probability-matrix index has no exact form)")
    cs = np.linspace(c_min, c_max, args.points).tolist()
    if method == "exact":
        res = exact_curve(sigma, args.n, args.m, cs, budget=budget_from_env(), workers=args.workers)
        write_rows(args.out, ["c", "value"], [[fmt_c(c), fmt_value(r.value)] for c, r in zip(cs, res)])
        return
    if args.m is None:
        N = args.samples or MAX_DEFAULT_SAMPLES
        values = probability_values(sigma, args.n, N, seed=args.seed, workers=args.workers)
        res = mc_curve(values, cs, MC_PROBABILITY, args.seed)
    else:
        N = args.samples or default_samples(args.m, args.n * args.n)
        values = confusion_values(sigma, args.n, args.m, N, seed=args.seed, workers=args.workers)
        res = mc_curve(values, cs, MC_CONFUSION, args.seed)
    write_rows(
        args.out,
        ["c", "value", "std_error"],
        [[fmt_c(c), fmt_value(r.value), fmt_value(r.std_error)] for c, r in zip(cs, res)],
    )


def convergence_table(sigma, n, cs, ms, samples, seed=0, workers=1, budget=DEFAULT_BUDGET):
    """Rows ``(c, m, varrho, rho, delta)`` with ``delta = rho - varrho``.

    The probability index uses one shared sample on stream ``seed``; each
    ``m`` is enumerated exactly when within ``budget`` and otherwise sampled
    with seed ``seed + 1 + position in ms``.
    """
    rho = mc_curve(probability_values(sigma, n, samples, seed=seed, workers=workers), cs, MC_PROBABILITY, seed)
    rows = []
    for pos, m in enumerate(ms):
        if composition_count(m, n * n) <= budget:
            varrho = [r.value for r in exact_curve(sigma, n, m, cs, budget=budget, workers=workers)]
            errs = [0.0] * len(cs)
        else:
            s = (seed + 1 + pos) & SEED_MASK
            est = mc_curve(confusion_values(sigma, n, m, samples, seed=s, workers=workers), cs, MC_CONFUSION, s)
            varrho = [e.value for e in est]
            errs = [e.std_error for e in est]
        for c, v, r, e in zip(cs, varrho, rho, errs):
            rows.append((c, m, v, r.value, r.value - v, (r.std_error ** 2 + e ** 2) ** 0.5))
    return rows


def cmd_convergence(args):
    sigma = lookup_measure(args.measure)
    cs = args.c_grid or np.linspace(sigma.range_min, sigma.range_max, DEFAULT_POINTS).tolist()
    rows = convergence_table(
        sigma, args.n, cs, args.m_list, args.samples,
        seed=args.seed, workers=args.workers, budget=budget_from_env(),
    )
    write_rows(
        args.out,
        ["c", "m", "varrho", "rho", "delta"],
        [[fmt_c(c), m, fmt_value(v), fmt_value(r), fmt_value(d)] for c, m, v, r, d, _ in rows],
    )


COMMANDS = {
    "exact": cmd_exact,
    "mc": cmd_mc,
    "curve": cmd_curve,
    "convergence": cmd_convergence,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        COMMANDS[args.command](args)
    except UnknownMeasure as exc:
        print(f"sigkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"sigkit: error: BudgetExceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except OutputError as exc:
        print(f"sigkit: error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    except (UsageError, SigkitError, ValueError) as exc:
        print(f"sigkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
