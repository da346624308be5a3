"""Throughput benchmarks: operations per second versus operand width.

Each cell ``(op, k)`` draws a pool of 1024 operand tuples from a seeded RNG,
runs one warmup pass, then times ``reps`` passes of ``iterations`` calls with
a monotonic clock and keeps the median.  Results are consumed by storing the
last one so no call can be skipped.
"""

from __future__ import annotations

import csv
import random as _random
import statistics
import time
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from . import arith, core, division, modular, montgomery, ntheory
from .core import LIMB_LOG2, FixedUint, uint

POOL_SIZE = 1024
DEFAULT_REPS = 5
CSV_HEADER = ("op", "bits", "iterations", "elapsed_s", "mops")

OPS = ("add", "add_wrapping", "lmul", "mul_wrapping", "mul_mod", "mont_mul",
       "exp_mod", "div", "gcd")

# Default sweep: 128 to 8192 bits.  Exponentiation grows roughly cubically;
# one 8192-bit exp_mod takes over a minute, so that cell is left out.
SUITE_LEVELS = tuple(range(LIMB_LOG2 + 1, LIMB_LOG2 + 8))
SUITE_MAX_LEVEL = {"exp_mod": LIMB_LOG2 + 5}

# Calibration target for one timed pass when no iteration count is given.
TARGET_PASS_SECONDS = 0.02


class UsageError(ValueError):
    """Bad op name, level or iteration count."""


@dataclass(frozen=True)
class BenchRecord:
    op_name: str
    bits: int
    iterations: int
    elapsed: float
    mops: float

    @classmethod
    def from_timing(cls, op_name: str, bits: int, iterations: int,
                    elapsed: float) -> BenchRecord:
        if elapsed <= 0:
            raise ValueError("elapsed time must be positive")
        return cls(op_name, bits, iterations, elapsed, iterations / elapsed / 1e6)


def _odd_modulus(t: type[FixedUint], rng) -> FixedUint:
    # Full width and odd, as a typical cryptographic modulus.
    return t(rng.getrandbits(t.bits) | 1 | (1 << (t.bits - 1)))


def make_pool(op: str, k: int, seed: int) -> tuple[Callable, list[tuple]]:
    """``(fn, pool)`` for one cell; ``fn(*pool[i])`` is the timed call."""
    check_cell(op, k)
    t = uint(k)
    rng = _random.Random(f"{op}/{k}/{seed}")

    def pairs(draw):
        return [draw() for _ in range(POOL_SIZE)]

    if op in ("add", "add_wrapping", "lmul", "mul_wrapping"):
        fn = getattr(arith, op)
        return fn, pairs(lambda: (core.random(t, rng), core.random(t, rng)))
    if op == "div":
        def nonzero():
            while True:
                b = core.random(t, rng) >> rng.randrange(t.bits)
                if b:
                    return b
        return division.div, pairs(lambda: (core.random(t, rng), nonzero()))
    if op == "gcd":
        return ntheory.gcd, pairs(lambda: (core.random(t, rng), core.random(t, rng)))

    n = _odd_modulus(t, rng)
    if op == "mul_mod":
        return modular.mul_mod, pairs(
            lambda: (core.random_below(rng, n), core.random_below(rng, n), n))
    if op == "exp_mod":
        return modular.exp_mod, pairs(
            lambda: (core.random_below(rng, n), core.random(t, rng), n))
    ctx = montgomery.mont_new(n)
    return montgomery.mont_mul, pairs(
        lambda: (ctx, core.random_below(rng, n), core.random_below(rng, n)))


def check_cell(op: str, k: int) -> None:
    if op not in OPS:
        raise UsageError(f"unknown op {op!r}; expected one of {', '.join(OPS)}")
    if not LIMB_LOG2 <= k <= LIMB_LOG2 + 7:
        raise UsageError(f"level {k} outside [{LIMB_LOG2}, {LIMB_LOG2 + 7}]")


def _timed_pass(fn: Callable, pool: Sequence[tuple], iterations: int) -> float:
    size = len(pool)
    # Build the index sequence before starting the clock.
    order = [pool[i % size] for i in range(iterations)]
    sink = None
    start = time.perf_counter()
    for args in order:
        sink = fn(*args)
    elapsed = time.perf_counter() - start
    del sink
    return elapsed


def _calibrate(fn: Callable, pool: Sequence[tuple]) -> int:
    n = 1
    while True:
        elapsed = _timed_pass(fn, pool, n)
        if elapsed >= TARGET_PASS_SECONDS:
            return n
        if elapsed <= 0:
            n *= 16
            continue
        n = max(n + 1, min(n * 16, int(n * TARGET_PASS_SECONDS / elapsed * 1.1)))


def run_bench(op: str, k: int, iterations: Optional[int] = None, seed: int = 0,
              reps: int = DEFAULT_REPS) -> BenchRecord:
    """Median timing of ``reps`` passes for one ``(op, k)`` cell.

    ``iterations=None`` picks a count giving roughly 20 ms per pass.
    """
    if iterations is not None and iterations < 1:
        raise UsageError("iterations must be at least 1")
    if reps < 1:
        raise UsageError("reps must be at least 1")
    fn, pool = make_pool(op, k, seed)
    if iterations is None:
        # Calibration doubles as the warmup.
        iterations = _calibrate(fn, pool)
    else:
        _timed_pass(fn, pool, min(iterations, len(pool)))
    times = [_timed_pass(fn, pool, iterations) for _ in range(reps)]
    elapsed = statistics.median(times)
    return BenchRecord.from_timing(op, 1 << k, iterations, elapsed)


def relative_throughput(op: str, baseline: str, k: int, seed: int = 0,
                        reps: int = 7) -> float:
    """Throughput of ``op`` divided by that of ``baseline`` at level ``k``.

    Passes of the two ops alternate with the same iteration count, so slow
    drift in machine load affects both sides alike.  Medians are compared.
    """
    fa, pa = make_pool(op, k, seed)
    fb, pb = make_pool(baseline, k, seed)
    iterations = _calibrate(fb, pb)
    _timed_pass(fa, pa, min(iterations, len(pa)))
    ta, tb = [], []
    for _ in range(reps):
        ta.append(_timed_pass(fa, pa, iterations))
        tb.append(_timed_pass(fb, pb, iterations))
    return statistics.median(tb) / statistics.median(ta)


@dataclass(frozen=True)
class SuiteConfig:
    cells: tuple[tuple[str, int], ...]
    iterations: Optional[int] = None
    seed: int = 0
    reps: int = DEFAULT_REPS

    @classmethod
    def default(cls, seed: int = 0) -> SuiteConfig:
        cells = tuple((op, k) for op in OPS for k in SUITE_LEVELS
                      if k <= SUITE_MAX_LEVEL.get(op, k))
        return cls(cells, seed=seed)


def run_suite(config: SuiteConfig, progress: Optional[Callable] = None
              ) -> list[BenchRecord]:
    out = []
    for op, k in config.cells:
        rec = run_bench(op, k, config.iterations, config.seed, config.reps)
        if progress is not None:
            progress(rec)
        out.append(rec)
    return out


def format_row(r: BenchRecord) -> list[str]:
    # repr keeps every float exactly, so the file parses back losslessly.
    return [r.op_name, str(r.bits), str(r.iterations), repr(r.elapsed), repr(r.mops)]


def emit_csv(records: Iterable[BenchRecord], path) -> None:
    try:
        with open(path, "w", newline="", encoding="ascii") as f:
            w = csv.writer(f, lineterminator="\n")
            w.writerow(CSV_HEADER)
            for r in records:
                w.writerow(format_row(r))
    except OSError as e:
        raise OSError(e.errno, f"cannot write benchmark CSV: {e.strerror}", str(path)) from e


def read_csv(path) -> list[BenchRecord]:
    with open(path, newline="", encoding="ascii") as f:
        rows = list(csv.reader(f))
    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise ValueError(f"{path}: missing header {','.join(CSV_HEADER)}")
    return [BenchRecord(op, int(bits), int(it), float(el), float(mops))
            for op, bits, it, el, mops in rows[1:]]
