"""Command-line front end: test a data file for Gaussianity, or run
rejection-rate studies, with machine-readable output.

Exit codes: 0 = computed (regardless of the accept/reject outcome),
2 = input error, 3 = numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from .epps import FIXED, RANDOM, epps_test
from .exceptions import DegenerateSeriesError, NumericalError
from .fdr import combined_p
from .lobato_velasco import LvConfig, lv_test
from .rng import InnovationFamily, RngStream
from .rp import rp_test_multi
from .series import Series
from .simulation import (Ar1Process, WstarProcess, parse_test_kind, rejection_rate)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERICAL = 3


def read_values(path: str) -> np.ndarray:
    """Parse one numeric value per line; a non-numeric first line is treated
    as a header and skipped; values may carry commas (single-column CSV)."""
    text = Path(path).read_text()
    values: list[float] = []
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("input file is empty")
    for idx, line in enumerate(lines):
        tokens = [tok.strip() for tok in line.split(",") if tok.strip()]
        try:
            nums = [float(tok) for tok in tokens]
        except ValueError:
            if idx == 0:
                continue  # header line
            raise ValueError(f"non-numeric data at line {idx + 1}: {line!r}") from None
        values.extend(nums)
    if len(values) < 8:
        raise ValueError(f"need at least 8 numeric values, found {len(values)}")
    arr = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("input contains non-finite values")
    return arr


def _lv_config(args) -> LvConfig:
    return LvConfig(c=args.c, beta0=args.beta0, variant=args.lv_variant)


def _k_pairs_for(kind: str, k_pairs: int | None, projections: int) -> int:
    if kind == "RPmulti":
        return k_pairs
    if projections % 2 != 0 or projections < 2:
        raise ValueError("--projections must be an even number >= 2")
    return projections // 2


def run_test_command(args) -> dict:
    values = read_values(args.input)
    series = Series(values)
    rng = RngStream(args.seed)
    kind, k_pairs = parse_test_kind(args.test)
    lv_cfg = _lv_config(args)
    alpha = args.alpha

    if kind == "E":
        res = epps_test(series, args.epps_lambda or FIXED, rng)
        result = {"kind": "E", "epps": res.as_dict(), "p_value": res.p_value,
                  "reject": res.p_value <= alpha}
    elif kind == "G":
        res = lv_test(series, lv_cfg)
        result = {"kind": "G", "lv": res.as_dict(), "p_value": res.p_value,
                  "reject": res.p_value <= alpha}
    elif kind == "GE":
        res_e = epps_test(series, args.epps_lambda or RANDOM, rng)
        res_g = lv_test(series, lv_cfg)
        p = combined_p([res_e.p_value, res_g.p_value])
        result = {"kind": "GE", "epps": res_e.as_dict(), "lv": res_g.as_dict(),
                  "p_value": p, "reject": p <= alpha}
    else:
        pairs = _k_pairs_for(kind, k_pairs, args.projections)
        report = rp_test_multi(series, pairs, rng, alpha=alpha,
                               epps_mode=args.epps_lambda or RANDOM, lv=lv_cfg)
        label = "RP" if pairs == 2 else f"RPmulti:{pairs}"
        result = {"kind": label, "p_value": report.combined_p,
                  "reject": report.reject, **report.as_dict()}

    return {
        "schema_version": SCHEMA_VERSION,
        "command": "test",
        "input": args.input,
        "n": series.n,
        "test": args.test,
        "alpha": alpha,
        "seed": args.seed,
        "result": result,
    }


def _parse_dist(token: str) -> InnovationFamily:
    try:
        return InnovationFamily(token.strip().lower())
    except ValueError:
        names = ", ".join(f.value for f in InnovationFamily)
        raise ValueError(f"unknown innovation family {token!r} (choose from {names})") from None


def _csv_list(text: str) -> list[str]:
    return [tok.strip() for tok in text.split(",") if tok.strip()]


def _cells_from_args(args) -> list[dict]:
    cells = []
    if args.process == "wstar":
        if args.p is None:
            raise ValueError("--p is required for the wstar process")
        for test in _csv_list(args.test):
            for n in _csv_list(args.n):
                cells.append({"process": "wstar", "p": int(args.p), "n": int(n),
                              "test": test, "reps": args.reps})
    else:
        for q in _csv_list(args.q):
            for dist in _csv_list(args.dist):
                for test in _csv_list(args.test):
                    for n in _csv_list(args.n):
                        cells.append({"process": "ar1", "q": float(q), "dist": dist,
                                      "n": int(n), "test": test, "reps": args.reps,
                                      "past": args.past})
    return cells


def _cells_from_file(path: str, args) -> list[dict]:
    experiment = json.loads(Path(path).read_text())
    if not isinstance(experiment, dict) or "cells" not in experiment:
        raise ValueError("experiment file must be a JSON object with a 'cells' list")
    if "seed" in experiment:
        args.seed = int(experiment["seed"])
    if "alpha" in experiment:
        args.alpha = float(experiment["alpha"])
    cells = []
    for cell in experiment["cells"]:
        cell = dict(cell)
        cell.setdefault("reps", args.reps)
        cell.setdefault("past", args.past)
        cells.append(cell)
    return cells


def run_simulate_command(args, out) -> None:
    if args.experiment:
        cells = _cells_from_file(args.experiment, args)
    else:
        cells = _cells_from_args(args)
    if not cells:
        raise ValueError("no simulation cells requested")
    lv_cfg = _lv_config(args)
    rng = RngStream(args.seed)

    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["q", "dist", "test", "n", "reps", "rate", "se"])
    for cell in cells:
        kind, k_pairs = parse_test_kind(cell["test"])
        test_token = cell["test"] if kind == "RPmulti" else kind
        if cell.get("process", "ar1") == "wstar":
            proc = WstarProcess(p=int(cell["p"]), n=int(cell["n"]))
            q_field, dist_field = "", f"wstar(p={proc.p})"
        else:
            family = _parse_dist(cell["dist"])
            proc = Ar1Process(q=float(cell["q"]), innovation=family,
                              n=int(cell["n"]), past=int(cell.get("past", args.past)))
            q_field, dist_field = repr(proc.q), family.value
        res = rejection_rate(proc, test_token, reps=int(cell["reps"]),
                             alpha=args.alpha, rng=rng,
                             epps_mode=args.epps_lambda, lv=lv_cfg,
                             workers=args.workers)
        if res.errors:
            print(f"note: {res.errors} failed replications excluded "
                  f"({dist_field}, {test_token}, n={proc.n})", file=sys.stderr)
        writer.writerow([q_field, dist_field, test_token, proc.n, res.reps,
                         f"{res.rate:.6f}", f"{res.se:.6f}"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rpgauss",
        description="Random-projection test of Gaussianity for stationary time series.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha", type=float, default=0.05, help="test level (default 0.05)")
    common.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    common.add_argument("--c", type=float, default=1.0,
                        help="lag-window constant of the skewness-kurtosis test (default 1)")
    common.add_argument("--beta0", type=float, default=0.5,
                        help="lag-window exponent of the skewness-kurtosis test (default 0.5)")
    common.add_argument("--lv-variant", choices=["modified", "original"], default="modified",
                        help="skewness-kurtosis variant (default modified)")
    common.add_argument("--epps-lambda", choices=[FIXED, RANDOM], default=None,
                        help="frequency mode of the CF test (default: fixed for E, "
                             "random inside GE/RP)")
    common.add_argument("--projections", type=int, default=4,
                        help="total projections for the RP test, even (default 4)")

    p_test = sub.add_parser("test", parents=[common],
                            help="test a data file (JSON report on stdout)")
    p_test.add_argument("--input", required=True, help="file with one numeric value per line")
    p_test.add_argument("--test", default="RP",
                        help="E | G | GE | RP | RPmulti:k (2k projections); default RP")

    p_sim = sub.add_parser("simulate", parents=[common],
                           help="estimate rejection rates (CSV on stdout)")
    p_sim.add_argument("--test", default="RP", help="comma list of test kinds (default RP)")
    p_sim.add_argument("--n", default="100", help="comma list of sample sizes (default 100)")
    p_sim.add_argument("--q", default="0", help="comma list of AR coefficients (default 0)")
    p_sim.add_argument("--dist", default="normal",
                       help="comma list of innovation families (default normal): "
                            + ", ".join(f.value for f in InnovationFamily))
    p_sim.add_argument("--reps", type=int, default=500, help="replications per cell (default 500)")
    p_sim.add_argument("--past", type=int, default=1000, help="burn-in length (default 1000)")
    p_sim.add_argument("--process", choices=["ar1", "wstar"], default="ar1",
                       help="generator family (default ar1)")
    p_sim.add_argument("--p", type=int, default=None, help="prime for the wstar process")
    p_sim.add_argument("--workers", type=int, default=1,
                       help="worker threads for replications (default 1)")
    p_sim.add_argument("--experiment", default=None,
                       help="JSON experiment file (overrides the cell flags)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "test":
            report = run_test_command(args)
            print(json.dumps(report, sort_keys=True, indent=2))
        else:
            run_simulate_command(args, sys.stdout)
        return EXIT_OK
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        # DegenerateSeriesError subclasses ValueError: short/constant/unreadable input
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
