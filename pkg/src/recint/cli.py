"""``bench`` command line: one cell or the default sweep, optionally to CSV."""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import bench
from .core import LIMB_LOG2

EXIT_USAGE = 2


def _bits(text: str) -> int:
    try:
        bits = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    k = bits.bit_length() - 1
    if bits <= 0 or bits != 1 << k or not LIMB_LOG2 <= k <= LIMB_LOG2 + 7:
        raise argparse.ArgumentTypeError(
            f"bits must be a power of two from {1 << LIMB_LOG2} to "
            f"{1 << (LIMB_LOG2 + 7)}, got {bits}")
    return bits


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {n}")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="bench",
        description="Throughput of fixed-width integer operations, in Mops/s.")
    p.add_argument("--suite", action="store_true",
                   help="run the default sweep over every op and width")
    p.add_argument("--op", choices=bench.OPS)
    p.add_argument("--bits", type=_bits)
    p.add_argument("--iters", type=_positive,
                   help="calls per timed pass (default: calibrated)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--reps", type=_positive, default=bench.DEFAULT_REPS)
    p.add_argument("--csv", metavar="PATH", help="write results as CSV")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    if args.suite:
        if args.op or args.bits:
            parser.print_usage(sys.stderr)
            print("bench: --suite cannot be combined with --op/--bits", file=sys.stderr)
            return EXIT_USAGE
        if not args.csv:
            parser.print_usage(sys.stderr)
            print("bench: --suite requires --csv PATH", file=sys.stderr)
            return EXIT_USAGE
        cfg = bench.SuiteConfig.default(args.seed)
        cfg = bench.SuiteConfig(cfg.cells, args.iters, args.seed, args.reps)
        records = bench.run_suite(cfg, progress=_print_record)
    else:
        if not args.op or not args.bits:
            parser.print_usage(sys.stderr)
            print("bench: --op and --bits are required without --suite", file=sys.stderr)
            return EXIT_USAGE
        k = args.bits.bit_length() - 1
        records = [bench.run_bench(args.op, k, args.iters, args.seed, args.reps)]
        _print_record(records[0])

    if args.csv:
        try:
            bench.emit_csv(records, args.csv)
        except OSError as e:
            print(f"bench: {e.strerror}: {e.filename}", file=sys.stderr)
            return 1
    return 0


def _print_record(r: bench.BenchRecord) -> None:
    print(f"{r.op_name:>12} {r.bits:>5} bits  {r.iterations:>8} iters  "
          f"{r.elapsed:.6f} s  {r.mops:.6f} Mops/s", flush=True)


if __name__ == "__main__":
    sys.exit(main())
