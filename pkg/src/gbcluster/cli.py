"""Command-line interface: generate data, run clustering, evaluate, benchmark.

Exit codes: 0 success, 1 usage error, 2 I/O error, 3 numeric/validation
error.  All randomness flows from --seed; identical invocations on identical
inputs write byte-identical CSV files (the JSON summaries additionally carry
wall-clock timings).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from typing import Sequence

import numpy as np

from . import __version__
from .baselines import DbscanConfig, DpeakConfig, KMeansConfig, dbscan, dpeak, kmeans
from .core import Dataset
from .data import (BUNDLED_DATASETS, FAMILIES, GeneratorSpec, generate,
                   load_csv, save_dataset, save_results)
from .differentiation import cluster
from .division import DivisionTrace
from .metrics import BenchReport, benchmark, rand_index

ALGORITHMS = ("gbc", "kmeans", "dbscan", "dpeak")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_INVALID = 3

# Baseline parameters used by `bench` for each bundled dataset (gbc takes
# none).  These are fixed, documented choices, not auto-tuned values.
BENCH_BASELINES: dict[str, dict] = {
    "moons1k": {"kmeans": KMeansConfig(k=2, seed=1), "dbscan": DbscanConfig(eps=0.1, min_pts=5),
                "dpeak": DpeakConfig(dc=0.15, k=2)},
    "blobs5": {"kmeans": KMeansConfig(k=5, seed=1), "dbscan": DbscanConfig(eps=0.25, min_pts=5),
               "dpeak": DpeakConfig(dc=0.3, k=5)},
    "circles3": {"kmeans": KMeansConfig(k=3, seed=1), "dbscan": DbscanConfig(eps=0.12, min_pts=4),
                 "dpeak": DpeakConfig(dc=0.15, k=3)},
    "spirals2": {"kmeans": KMeansConfig(k=2, seed=1), "dbscan": DbscanConfig(eps=0.15, min_pts=4),
                 "dpeak": DpeakConfig(dc=0.2, k=2)},
    "blobs10k": {"kmeans": KMeansConfig(k=5, seed=1), "dbscan": DbscanConfig(eps=0.2, min_pts=5),
                 "dpeak": DpeakConfig(dc=0.2, k=5)},
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); usage errors are exit 1 here
        raise UsageError(message)


def _default_threads() -> int:
    raw = os.environ.get("GBCLUSTER_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _build_parser() -> _Parser:
    parser = _Parser(prog="gbcluster", description=__doc__)
    parser.add_argument("--version", action="version", version=f"gbcluster {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a synthetic dataset CSV")
    src = gen.add_mutually_exclusive_group(required=True)
    src.add_argument("--family", choices=FAMILIES, help="generator family")
    src.add_argument("--dataset", choices=sorted(BUNDLED_DATASETS),
                     help="bundled dataset name (overrides the other generator flags)")
    gen.add_argument("--n", type=int, default=1000, help="number of points (default 1000)")
    gen.add_argument("--noise", type=float, default=0.0, help="coordinate noise sigma (default 0)")
    gen.add_argument("--seed", type=int, default=0, help="generator seed (default 0)")
    gen.add_argument("--out", required=True, help="output CSV path")

    run = sub.add_parser("run", help="cluster a CSV file and write result files")
    run.add_argument("--algo", choices=ALGORITHMS, required=True)
    run.add_argument("--in", dest="infile", required=True, help="input CSV path")
    run.add_argument("--out", default="results", help="output prefix (default 'results')")
    run.add_argument("--no-header", action="store_true", help="input has no header row")
    run.add_argument("--label-column", type=int, default=None,
                     help="0-based ground-truth column to strip (default: a column "
                          "literally named 'label', when the file has a header)")
    run.add_argument("--seed", type=int, default=0, help="seed for seeded algorithms (kmeans)")
    run.add_argument("--k", type=int, default=None, help="cluster count (kmeans, dpeak)")
    run.add_argument("--eps", type=float, default=None, help="neighborhood radius (dbscan)")
    run.add_argument("--min-pts", type=int, default=None, help="core threshold (dbscan)")
    run.add_argument("--dc", type=float, default=None, help="cutoff distance (dpeak)")
    run.add_argument("--verbose", action="store_true", help="print division trace")
    run.add_argument("--threads", type=int, default=_default_threads(),
                     help="worker threads (results are identical for any value)")

    ev = sub.add_parser("eval", help="Rand index between two label columns")
    ev.add_argument("--truth", required=True, help="CSV with ground-truth labels")
    ev.add_argument("--pred", required=True, help="CSV with predicted labels")
    ev.add_argument("--truth-col", type=int, default=-1,
                    help="label column in --truth (default: last)")
    ev.add_argument("--pred-col", type=int, default=-1,
                    help="label column in --pred (default: last)")
    ev.add_argument("--no-header", action="store_true", help="files have no header row")

    bench = sub.add_parser("bench", help="benchmark algorithms over bundled datasets")
    bench.add_argument("--algos", default="gbc,kmeans,dbscan,dpeak",
                       help="comma-separated algorithms (default: all)")
    bench.add_argument("--data", required=True,
                       help=f"comma-separated bundled names from: {', '.join(sorted(BUNDLED_DATASETS))}")
    bench.add_argument("--repetitions", type=int, default=3,
                       help="timing repetitions per cell; the median is reported (default 3)")
    bench.add_argument("--out", default=None, help="write the table as CSV (+ .json summary)")
    bench.add_argument("--threads", type=int, default=_default_threads(),
                       help="worker threads (results are identical for any value)")
    return parser


def _check_threads(value: int) -> None:
    if value < 1:
        raise UsageError(f"--threads must be >= 1, got {value}")


def _cmd_gen(args) -> int:
    if args.dataset is not None:
        spec = BUNDLED_DATASETS[args.dataset]
    else:
        spec = GeneratorSpec(family=args.family, n=args.n, noise_sigma=args.noise, seed=args.seed)
    save_dataset(args.out, generate(spec))
    print(f"wrote {spec.n} points to {args.out}")
    return EXIT_OK


def _detect_label_column(path, has_header: bool) -> int | None:
    if not has_header:
        return None
    with open(path, newline="") as fh:
        header = next(csv.reader(fh), None)
    if header is None:
        raise ValueError(f"{path}: no data rows")
    names = [h.strip().lower() for h in header]
    return names.index("label") if "label" in names else None


def _load_run_input(args) -> Dataset:
    has_header = not args.no_header
    label_col = args.label_column
    if label_col is None:
        label_col = _detect_label_column(args.infile, has_header)
    return load_csv(args.infile, has_header=has_header, label_column=label_col)


def _baseline_flags(args) -> list[str]:
    return [flag for flag, value in
            (("--k", args.k), ("--eps", args.eps), ("--min-pts", args.min_pts), ("--dc", args.dc))
            if value is not None]


def _make_runner(args):
    algo = args.algo
    if algo == "kmeans":
        if args.k is None:
            raise UsageError("kmeans needs --k; try --k 2")
        cfg = KMeansConfig(k=args.k, seed=args.seed)
        return lambda ds: kmeans(ds, cfg)
    if algo == "dbscan":
        if args.eps is None or args.min_pts is None:
            raise UsageError("dbscan needs --eps and --min-pts; try --eps 0.2 --min-pts 5")
        cfg = DbscanConfig(eps=args.eps, min_pts=args.min_pts)
        return lambda ds: dbscan(ds, cfg)
    if args.dc is None or args.k is None:
        raise UsageError("dpeak needs --dc and --k; try --dc 0.2 --k 2")
    cfg = DpeakConfig(dc=args.dc, k=args.k)
    return lambda ds: dpeak(ds, cfg)


def _cmd_run(args) -> int:
    _check_threads(args.threads)
    if args.algo == "gbc":
        extra = _baseline_flags(args)
        if extra:
            raise UsageError(f"{', '.join(extra)}: gbc takes no algorithm parameters; "
                             "drop the flag or pick a baseline with --algo")
    dataset = _load_run_input(args)
    trace = None
    ballset = None
    t0 = time.perf_counter()
    if args.algo == "gbc":
        trace = DivisionTrace()
        assignment, ballset = cluster(dataset, trace=trace)
    else:
        assignment = _make_runner(args)(dataset)
    wall = time.perf_counter() - t0

    if args.verbose and trace is not None:
        for i, r in enumerate(trace.rounds, start=1):
            print(f"round {i} [{r.phase}]: balls={r.ball_count} "
                  f"splits={r.split_count} oversized={r.oversized_count}")
        if trace.round_cap_hit:
            print("warning: refinement round cap reached with oversized balls left")

    save_results(args.out, dataset, assignment, ballset)
    ri = None
    if dataset.labels is not None:
        ri = rand_index(dataset.labels, assignment.labels)
    summary = {
        "algorithm": args.algo,
        "input": args.infile,
        "n_points": len(dataset),
        "dim": dataset.dim,
        "cluster_count": assignment.cluster_count,
        "noise_count": assignment.noise_count,
        "ball_count": len(ballset) if ballset is not None else None,
        "round_cap_hit": trace.round_cap_hit if trace is not None else None,
        "rand_index": ri,
        "wall_time_s": wall,
        "seed": args.seed,
    }
    with open(args.out + "_summary.json", "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"clusters={assignment.cluster_count} noise={assignment.noise_count}"
          + (f" rand_index={ri:.4f}" if ri is not None else "")
          + f" -> {args.out}_points.csv")
    return EXIT_OK


def _label_vector(path, col: int, has_header: bool) -> np.ndarray:
    ds = load_csv(path, has_header=has_header, label_column=col)
    if ds.labels is None:
        raise ValueError(f"{path}: no label column parsed")
    return ds.labels


def _cmd_eval(args) -> int:
    truth = _label_vector(args.truth, args.truth_col, not args.no_header)
    pred = _label_vector(args.pred, args.pred_col, not args.no_header)
    if truth.size != pred.size:
        raise ValueError(f"label counts differ: {args.truth} has {truth.size}, "
                         f"{args.pred} has {pred.size}")
    print(f"rand_index {rand_index(truth, pred):.6f}")
    return EXIT_OK


def _bench_runner(algo: str, dataset_name: str):
    if algo == "gbc":
        return lambda ds: cluster(ds)[0]
    params = BENCH_BASELINES[dataset_name][algo]
    if algo == "kmeans":
        return lambda ds: kmeans(ds, params)
    if algo == "dbscan":
        return lambda ds: dbscan(ds, params)
    return lambda ds: dpeak(ds, params)


def _cmd_bench(args) -> int:
    _check_threads(args.threads)
    if args.repetitions < 1:
        raise UsageError(f"--repetitions must be >= 1, got {args.repetitions}")
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    names = [d.strip() for d in args.data.split(",") if d.strip()]
    for a in algos:
        if a not in ALGORITHMS:
            raise UsageError(f"unknown algorithm {a!r}; choose from {', '.join(ALGORITHMS)}")
    for d in names:
        if d not in BUNDLED_DATASETS:
            raise UsageError(f"unknown dataset {d!r}; choose from "
                             f"{', '.join(sorted(BUNDLED_DATASETS))}")
    reports: list[BenchReport] = []
    for name in names:
        ds = generate(BUNDLED_DATASETS[name])
        for algo in algos:
            report = benchmark(_bench_runner(algo, name), ds, repetitions=args.repetitions,
                               algorithm=algo, dataset_name=name)
            reports.append(report)
            print(f"{name:>10s} {algo:>7s}: {report.wall_time:9.4f}s  "
                  f"rand_index={report.rand_index:.4f}  clusters={report.cluster_count}  "
                  f"noise={report.noise_count}")
    if args.out:
        with open(args.out, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["algorithm", "dataset", "wall_time_s", "rand_index",
                             "cluster_count", "noise_count"])
            for r in reports:
                writer.writerow([r.algorithm, r.dataset, f"{r.wall_time:.6f}",
                                 "" if r.rand_index is None else f"{r.rand_index:.6f}",
                                 r.cluster_count, r.noise_count])
        with open(args.out + ".json", "w") as fh:
            json.dump([r.as_dict() for r in reports], fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(f"wrote {args.out}")
    return EXIT_OK


_COMMANDS = {"gen": _cmd_gen, "run": _cmd_run, "eval": _cmd_eval, "bench": _cmd_bench}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}\nrun 'gbcluster --help' for usage", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}\nrun 'gbcluster {args.command} --help' for usage", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc.filename or exc}: file not found; check the path", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}; check the path and permissions", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}\nfix the offending value and rerun", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
