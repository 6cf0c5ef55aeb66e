"""``adaptive-pst-bench``: comparison-count benchmarks and self-checks.

Exit codes: 0 ok, 1 verification failure, 2 usage error.
"""
import argparse
import logging
import sys

from . import bench, verify
from .pst import DEFAULT_ALPHA

log = logging.getLogger("adaptive_pst")


def _int_list(text):
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError("every n must be a positive integer")
    return values


def _float_list(text):
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated floats, got {text!r}")
    if not values or any(not 0.0 <= v <= 1.0 for v in values):
        raise argparse.ArgumentTypeError("every p must lie in [0, 1]")
    return values


def _structures(text):
    values = [v.strip() for v in text.split(",") if v.strip()]
    bad = [v for v in values if v not in bench.STRUCTURES]
    if not values or bad:
        raise argparse.ArgumentTypeError(f"structures must come from {','.join(bench.STRUCTURES)}")
    return values


def _alpha(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 0.5 < value < 1:
        raise argparse.ArgumentTypeError("alpha must lie in (0.5, 1)")
    return value


def _positive(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser():
    parser = argparse.ArgumentParser(
        prog="adaptive-pst-bench",
        description="Key-comparison benchmarks for AAPST, splay and AVL trees.",
    )
    parser.add_argument("--mode", choices=("bench", "verify", "adversarial"), default="bench")
    parser.add_argument("--n-list", type=_int_list, help="comma-separated dataset sizes")
    parser.add_argument("--p-list", type=_float_list, default=list(bench.DEFAULT_P_LIST))
    parser.add_argument("--queries-per-key", type=int, default=16, help="m = value * n")
    parser.add_argument("--seeds", type=_positive, default=5, help="number of seeds per cell")
    parser.add_argument("--base-seed", type=int, default=0)
    parser.add_argument("--structures", type=_structures)
    parser.add_argument("--out", help="CSV destination (default stdout)")
    parser.add_argument("--plot-data", metavar="DIR", help="write one gnuplot file per p")
    parser.add_argument("--alpha", type=_alpha, default=DEFAULT_ALPHA)
    parser.add_argument("--siftup-opt", action="store_true", help="AAPST local reinsertion")
    parser.add_argument("--jobs", type=_positive, default=1, help="parallel worker processes")
    parser.add_argument("--point-sets", type=_positive, default=100, help="verify: random point sets")
    parser.add_argument("--rects", type=_positive, default=20, help="verify: rectangles per set")
    parser.add_argument("--ops", type=_positive, default=10_000, help="verify: ops per dictionary")
    parser.add_argument("--inject-fault", choices=("heap",), help=argparse.SUPPRESS)
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def _emit(rows, out):
    if out:
        with open(out, "w", newline="") as fh:
            bench.write_csv(rows, fh)
    else:
        bench.write_csv(rows, sys.stdout)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.queries_per_key < 0:
        parser.error("--queries-per-key must be >= 0")
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")

    if args.mode == "verify":
        suites = verify.run_verify(args.point_sets, args.rects, args.ops, args.base_seed, args.inject_fault)
        for s in suites:
            print(s.summary())
            for f in s.failures:
                print(f"  {f}")
        return 0 if all(s.ok for s in suites) else 1

    if args.mode == "adversarial":
        rows = bench.run_adversarial(
            args.n_list or bench.DEFAULT_ADVERSARIAL_N,
            args.structures or ("aapst", "splay"),
            alpha=args.alpha,
            siftup_opt=args.siftup_opt,
        )
        _emit(rows, args.out)
        return 0

    config = bench.BenchConfig(
        n_list=args.n_list or bench.DEFAULT_N_LIST,
        p_list=args.p_list,
        queries_per_key=args.queries_per_key,
        seeds=args.seeds,
        base_seed=args.base_seed,
        structures=args.structures or bench.STRUCTURES,
        alpha=args.alpha,
        siftup_opt=args.siftup_opt,
        jobs=args.jobs,
    )
    log.info("running %d cells", len(config.n_list) * len(config.p_list) * config.seeds)
    rows = bench.run_bench(config)
    _emit(rows, args.out)
    if args.plot_data:
        for path in bench.write_plot_data(rows, args.plot_data, config.structures):
            log.info("wrote %s", path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
