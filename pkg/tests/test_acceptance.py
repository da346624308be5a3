"""Acceptance criteria 1-9.

Each test reports one ``criterion N: PASS|FAIL ...`` line (echoed in the
pytest summary) and then asserts.  Run this file directly to print the
lines without pytest:  ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys
import time
from collections import Counter
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import recint as ri  # noqa: E402
from recint import bench, core, uint  # noqa: E402
from recint.arith import arith_kernel, limb_products  # noqa: E402
from recint.core import LIMB_LOG2  # noqa: E402
from recint.division import div_kernel  # noqa: E402
from recint.montgomery import MontgomeryContext  # noqa: E402
from recint.oracle import (BigNat, o_divmod, o_extgcd, o_mod,  # noqa: E402
                           o_mul)

from diffcases import CASES  # noqa: E402
from support import prime_pool  # noqa: E402

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []

DIFF_LEVELS = (6, 7, 8, 9, 10)
DIFF_CASES = 10 ** 4
DIFF_BUDGET_S = 120.0
EXHAUSTIVE_BUDGET_S = 60.0
COHERENCE_PAIRS = 10 ** 5
SUITE_BUDGET_S = 300.0
MONT_SPEEDUP = 1.3


def report(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line, flush=True)


def fmt_duration(s: float) -> str:
    if s < 120:
        return f"{s:.1f} s"
    if s < 7200:
        return f"{s / 60:.1f} min"
    return f"{s / 3600:.1f} h"


# -- 1. oracle differential suite ---------------------------------------------

def criterion_1():
    """10**4 oracle-checked cases per (operation, level), inside 2 minutes.

    Cells run in two phases: a first round of a few cases per cell so every
    operation at every level is covered, then cells are filled cheapest
    first until the budget is spent.  Any mismatch fails the criterion; so
    does running out of time, in which case the full runtime is projected
    from the measured per-case cost.
    """
    start = time.perf_counter()
    deadline = start + DIFF_BUDGET_S
    cells = [(key, k) for k in DIFF_LEVELS for key in sorted(CASES)]
    done = Counter()
    spent = Counter()
    mismatches = []
    rngs = {c: random.Random(f"acceptance-1/{c}") for c in cells}

    def run(cell, count):
        key, k = cell
        fn, t, rng = CASES[key], uint(k), rngs[cell]
        for _ in range(count):
            t0 = time.perf_counter()
            msg = fn(rng, t)
            spent[cell] += time.perf_counter() - t0
            done[cell] += 1
            if msg:
                mismatches.append(msg)

    for cell in cells:
        run(cell, 3)
    for cell in sorted(cells, key=lambda c: spent[c] / done[c]):
        per_case = spent[cell] / done[cell]
        while done[cell] < DIFF_CASES and time.perf_counter() + per_case < deadline:
            run(cell, min(100, DIFF_CASES - done[cell]))
        if done[cell] < DIFF_CASES:
            break
    elapsed = time.perf_counter() - start
    complete = sum(done[c] >= DIFF_CASES for c in cells)
    projected = sum(spent[c] / done[c] * DIFF_CASES for c in cells)
    ok = not mismatches and complete == len(cells) and elapsed <= DIFF_BUDGET_S
    detail = (f"{len(mismatches)} mismatches in {sum(done.values())} cases; "
              f"{complete}/{len(cells)} (op, k) cells reached {DIFF_CASES} cases "
              f"in {fmt_duration(elapsed)}; projected full runtime "
              f"{fmt_duration(projected)} (budget {fmt_duration(DIFF_BUDGET_S)})")
    if mismatches:
        detail += f"; first: {mismatches[0]}"
    return ok, detail


# -- 2. exhaustive small-scale suite ------------------------------------------

def _exhaustive_div2n1n(mismatches):
    # 8-bit digits over 4-bit limbs; every normalized b, a_hi < b, any a_lo.
    d, W = div_kernel(3, 2), 8
    f, n = d.div2n1n, 0
    for b in range(1 << (W - 1), 1 << W):
        B_ = BigNat.from_int(b)
        # Walk the dividends in order; (q, r) advances like a counter and is
        # anchored to the oracle at both ends.
        q, r = (x.to_int() for x in o_divmod(BigNat.from_int(0), B_))
        for ah in range(b):
            for al in range(1 << W):
                if f(ah, al, b) != (q, r):
                    mismatches.append(f"div2n1n({ah}, {al}, {b})")
                r += 1
                if r == b:
                    r, q = 0, q + 1
                n += 1
        last = o_divmod(BigNat.from_int((b << W) - 1), B_)
        if (q, r) != (last[0].to_int() + (1 if last[1].to_int() == b - 1 else 0),
                      0 if last[1].to_int() == b - 1 else last[1].to_int() + 1):
            mismatches.append(f"div2n1n enumeration drifted at b={b}")
    return n


def _exhaustive_div3n2n(mismatches, limb_log2):
    d, W = div_kernel(3, limb_log2), 8
    H = W // 2
    f, n = d.div3n2n, 0
    for b in range(1 << (W - 1), 1 << W):
        q = r = 0
        for a12 in range(b):
            for a3 in range(1 << H):
                if f(a12, a3, b) != (q, r):
                    mismatches.append(f"div3n2n({a12}, {a3}, {b}) L{limb_log2}")
                r += 1
                if r == b:
                    r, q = 0, q + 1
                n += 1
        wq, wr = o_divmod(BigNat.from_int((b - 1) << H | ((1 << H) - 1)), BigNat.from_int(b))
        if (q, r) != (wq.to_int() + (wr.to_int() == b - 1),
                      0 if wr.to_int() == b - 1 else wr.to_int() + 1):
            mismatches.append(f"div3n2n enumeration drifted at b={b}")
    return n


def _exhaustive_div(mismatches):
    # The normalizing driver over every 8-bit pair, 2-bit limbs.
    t = uint(3, 1)
    n = 0
    for a in range(256):
        A = BigNat.from_int(a)
        for b in range(1, 256):
            q, r = ri.div(t(a), t(b))
            wq, wr = o_divmod(A, BigNat.from_int(b))
            if (int(q), int(r)) != (wq.to_int(), wr.to_int()):
                mismatches.append(f"div({a}, {b})")
            n += 1
    return n


def _exhaustive_redc(mismatches):
    # R = 2**8 over 4-bit limbs; every odd n < 2**8 and every T < R*n.
    t, W = uint(3, 2), 8
    R = BigNat.from_int(1 << W)
    total = 0
    for n in range(3, 1 << W, 2):
        ctx = MontgomeryContext(t(n))
        g, u, _ = o_extgcd(R, BigNat.from_int(n))
        r_inv = o_mod(u.magnitude, BigNat.from_int(n)).to_int()
        if u.negative and r_inv:
            r_inv = n - r_inv
        redc = ctx._redc
        want = 0  # T * R**-1 mod n, advanced by r_inv per step of T
        for hi in range(n):
            for lo in range(1 << W):
                if redc(hi, lo) != want:
                    mismatches.append(f"redc(({hi}, {lo})) mod {n}")
                want += r_inv
                if want >= n:
                    want -= n
                total += 1
        check = o_mod(o_mul(BigNat.from_int(n << W), BigNat.from_int(r_inv)),
                      BigNat.from_int(n)).to_int()
        if want != check:
            mismatches.append(f"redc enumeration drifted at n={n}")
    return total


def criterion_2():
    start = time.perf_counter()
    mismatches = []
    counts = {
        "div2n1n": _exhaustive_div2n1n(mismatches),
        "div3n2n": _exhaustive_div3n2n(mismatches, 2) + _exhaustive_div3n2n(mismatches, 1),
        "div": _exhaustive_div(mismatches),
        "redc": _exhaustive_redc(mismatches),
    }
    elapsed = time.perf_counter() - start
    ok = not mismatches and elapsed < EXHAUSTIVE_BUDGET_S
    detail = (", ".join(f"{k} {v}" for k, v in counts.items())
              + f" cases; {len(mismatches)} mismatches; {elapsed:.1f} s "
              f"(budget {EXHAUSTIVE_BUDGET_S:.0f} s)")
    if mismatches:
        detail += f"; first: {mismatches[0]}"
    return ok, detail


# -- 3. truncation coherence --------------------------------------------------

def criterion_3():
    levels = range(LIMB_LOG2, LIMB_LOG2 + 8)
    per = COHERENCE_PAIRS // len(levels)
    rng = random.Random("acceptance-3")
    bad = n = 0
    for k in levels:
        t = uint(k)
        for _ in range(per):
            b, c = core.random(t, rng), core.random(t, rng)
            if ri.mul_wrapping(b, c) != ri.lmul(b, c).low:
                bad += 1
            n += 1
    return bad == 0, f"{bad} mismatches in {n} pairs over k = {levels.start}..{levels.stop - 1}"


# -- 4. multiplication counts -------------------------------------------------

def _limb_products(k, op):
    counter = Counter()
    ar = arith_kernel(k, LIMB_LOG2, counter)
    x = (1 << ar.bits) - 5
    getattr(ar, op)(x, x - 1234567)
    return limb_products(counter)


def criterion_4():
    rows, ok = [], True
    for k in range(LIMB_LOG2 + 1, LIMB_LOG2 + 5):
        j = k - LIMB_LOG2
        w, f = _limb_products(k, "mul_wrapping"), _limb_products(k, "lmul")
        ok &= w == 3 ** j and f == 4 ** j
        rows.append(f"k={k} mul_wrapping {w} (want {3 ** j}) lmul {f} (want {4 ** j})")
    return ok, "; ".join(rows)


# -- 5. REDC cost ----------------------------------------------------------------

def criterion_5():
    rng = random.Random("acceptance-5")
    calls, ok = 0, True
    for k in range(LIMB_LOG2, LIMB_LOG2 + 5):
        t = uint(k)
        counter = Counter()
        ctx = ri.mont_new(t(core.random(t, rng)._v | 1 | (1 << (t.bits - 1))), counter)
        for _ in range(50):
            counter.clear()
            T = ri.WideProduct(core.random_below(rng, ctx.n), core.random(t, rng))
            ri.redc(ctx, T)
            top = {name: c for (name, level), c in counter.items() if level == k}
            ok &= top == {"mul_wrapping": 1, "lmul": 1}
            calls += 1
    return ok, (f"{calls} redc calls at k = {LIMB_LOG2}..{LIMB_LOG2 + 4}, each "
                f"{'exactly' if ok else 'NOT always'} 1 mul_wrapping + 1 lmul")


# -- 6. number-theoretic identities ---------------------------------------------

def criterion_6():
    rng = random.Random("acceptance-6")
    failures, counts = [], Counter()
    start = time.perf_counter()
    for bits in (128, 256, 512):
        t = uint(bits.bit_length() - 1)
        for p in prime_pool(bits, 20):
            P, PB = t(p), BigNat.from_int(p)
            ctx = ri.mont_new(P)
            e = t(p - 1)
            for _ in range(100):
                a = t(rng.randrange(1, p))
                if ri.exp_mod(a, e, P) != t(1) or ri.mont_exp(ctx, a, e) != t(1):
                    failures.append(f"Fermat a={int(a)} p={p}")
                inv = ri.inv_mod(a, P)
                if o_mod(o_mul(BigNat.from_int(int(inv)), BigNat.from_int(int(a))), PB) \
                        != BigNat.from_int(1):
                    failures.append(f"inverse a={int(a)} p={p}")
                counts["fermat"] += 1
                counts["inverse"] += 1
            for _ in range(1000):
                x = rng.randrange(p)
                a = t(x * x % p)
                r = ri.square_root_mod(a, P)
                rb = BigNat.from_int(int(r))
                if o_mod(o_mul(rb, rb), PB).to_int() != int(a):
                    failures.append(f"sqrt a={int(a)} p={p}")
                counts["sqrt"] += 1
    elapsed = time.perf_counter() - start
    detail = (f"{counts['fermat']} Fermat checks (exp_mod and mont_exp), "
              f"{counts['inverse']} inverses, {counts['sqrt']} square roots on 20 primes "
              f"each of 128/256/512 bits; {len(failures)} failures; {fmt_duration(elapsed)}")
    if failures:
        detail += f"; first: {failures[0]}"
    return not failures, detail


# -- 7. Montgomery round trip -----------------------------------------------------

def criterion_7():
    rng = random.Random("acceptance-7")
    bad, n = 0, 0
    for k in DIFF_LEVELS:
        t = uint(k)
        for i in range(10 ** 4):
            if i % 100 == 0:
                N = t(core.random(t, rng)._v | 1 | (1 << (t.bits - 1)))
                ctx = ri.mont_new(N)
            a, b = core.random(t, rng), core.random_below(rng, N)
            am = ri.reduce(a, N)
            if ri.from_mont(ctx, ri.to_mont(ctx, a)) != am:
                bad += 1
            abar, bbar = ri.to_mont(ctx, am), ri.to_mont(ctx, b)
            if ri.from_mont(ctx, ri.mont_mul(ctx, abar, bbar)) != ri.mul_mod(a, b, N):
                bad += 1
            n += 1
    return bad == 0, f"{bad} mismatches in {n} triples at {', '.join(str(1 << k) for k in DIFF_LEVELS)} bits"


# -- 8. benchmark sanity -----------------------------------------------------------

@lru_cache(maxsize=None)
def default_suite():
    start = time.perf_counter()
    records = bench.run_suite(bench.SuiteConfig.default())
    return records, time.perf_counter() - start


def criterion_8():
    parts, ok = [], True
    for k in range(LIMB_LOG2 + 1, LIMB_LOG2 + 8):
        j = k - LIMB_LOG2
        ratio = bench.relative_throughput("mul_wrapping", "lmul", k)
        expected = (4 / 3) ** j
        good = ratio >= 1.0 and expected / 2 <= ratio <= expected * 2
        ok &= good
        parts.append(f"{1 << k}b {ratio:.2f}x (want >=1, ~{expected:.2f}x within 2x)"
                     + ("" if good else " FAIL"))
    mont = bench.relative_throughput("mont_mul", "mul_mod", 9)
    ok &= mont >= MONT_SPEEDUP
    _, suite_s = default_suite()
    ok &= suite_s < SUITE_BUDGET_S
    detail = ("(a) mul_wrapping/lmul " + ", ".join(parts)
              + f"; (b) mont_mul/mul_mod at 512 bits {mont:.2f}x (want >= {MONT_SPEEDUP})"
              + f"; (c) default suite {fmt_duration(suite_s)} (budget {fmt_duration(SUITE_BUDGET_S)})")
    return ok, detail


# -- 9. CSV contract ---------------------------------------------------------------

def criterion_9(tmp_dir: Path):
    records, _ = default_suite()
    path = tmp_dir / "suite.csv"
    bench.emit_csv(records, path)
    back = bench.read_csv(path)
    want = {(op, 1 << k) for op, k in bench.SuiteConfig.default().cells}
    got = [(r.op_name, r.bits) for r in back]
    lossless = back == records
    one_each = sorted(got) == sorted(want) and len(got) == len(set(got))
    raw = path.read_bytes()
    lf_only = b"\r" not in raw
    ok = lossless and one_each and lf_only
    return ok, (f"{len(back)} rows for {len(want)} sweep cells; lossless round trip "
                f"{lossless}; one row per (op, bits) {one_each}; LF line endings {lf_only}")


# -- pytest entry points --------------------------------------------------------------

def _check(n, result):
    ok, detail = result
    report(n, ok, detail)
    assert ok, detail


def test_criterion_1_oracle_differential():
    _check(1, criterion_1())


def test_criterion_2_exhaustive_small_scale():
    _check(2, criterion_2())


def test_criterion_3_truncation_coherence():
    _check(3, criterion_3())


def test_criterion_4_multiplication_counts():
    _check(4, criterion_4())


def test_criterion_5_redc_cost():
    _check(5, criterion_5())


def test_criterion_6_number_theory():
    _check(6, criterion_6())


def test_criterion_7_montgomery_round_trip():
    _check(7, criterion_7())


def test_criterion_8_benchmark_sanity():
    _check(8, criterion_8())


def test_criterion_9_csv_contract(tmp_path):
    _check(9, criterion_9(tmp_path))


if __name__ == "__main__":
    import tempfile
    results = []
    for i, fn in enumerate((criterion_1, criterion_2, criterion_3, criterion_4,
                            criterion_5, criterion_6, criterion_7, criterion_8), 1):
        results.append(fn())
        report(i, *results[-1])
    with tempfile.TemporaryDirectory() as d:
        results.append(criterion_9(Path(d)))
        report(9, *results[-1])
    sys.exit(0 if all(ok for ok, _ in results) else 1)
