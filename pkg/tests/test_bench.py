import csv
import subprocess
import sys

import pytest

from recint import bench, cli
from recint.bench import BenchRecord, SuiteConfig
from recint.core import LIMB_LOG2


def test_record_invariant():
    r = BenchRecord.from_timing("add", 128, 1000, 0.5)
    assert r.mops == 1000 / 0.5 / 1e6
    with pytest.raises(ValueError):
        BenchRecord.from_timing("add", 128, 10, 0.0)


def test_run_bench_positive():
    r = bench.run_bench("add", LIMB_LOG2 + 1, 10 ** 4, seed=1, reps=1)
    assert r.mops > 0 and r.elapsed > 0 and r.bits == 128 and r.iterations == 10 ** 4


@pytest.mark.parametrize("op", bench.OPS)
def test_every_op_runs(op):
    r = bench.run_bench(op, LIMB_LOG2 + 1, 3, seed=0, reps=1)
    assert r.op_name == op and r.mops > 0


def test_pools_are_deterministic():
    for op in bench.OPS:
        _, a = bench.make_pool(op, 7, 42)
        _, b = bench.make_pool(op, 7, 42)
        _, c = bench.make_pool(op, 7, 43)
        key = [tuple(int(x) for x in args if not isinstance(x, bench.montgomery.MontgomeryContext))
               for args in a]
        assert key == [tuple(int(x) for x in args
                             if not isinstance(x, bench.montgomery.MontgomeryContext))
                       for args in b]
        assert a != c
        assert len(a) == bench.POOL_SIZE


def test_usage_errors():
    with pytest.raises(bench.UsageError):
        bench.run_bench("nope", 7, 1)
    with pytest.raises(bench.UsageError):
        bench.run_bench("add", LIMB_LOG2 + 8, 1)
    with pytest.raises(bench.UsageError):
        bench.run_bench("add", LIMB_LOG2 - 1, 1)
    with pytest.raises(bench.UsageError):
        bench.run_bench("add", 7, 0)


def test_add_throughput_trend():
    # Throughput of add does not rise with width, up to a noise factor 1.5.
    mops = [bench.run_bench("add", k, None, 0, reps=7).mops for k in range(7, 12)]
    for a, b in zip(mops, mops[1:]):
        assert b <= a * 1.5


def test_default_sweep_shape():
    cfg = SuiteConfig.default()
    bits = {(op, 1 << k) for op, k in cfg.cells}
    assert ("add", 128) in bits and ("add", 8192) in bits
    assert all(op in bench.OPS for op, _ in cfg.cells)
    assert len(cfg.cells) == len(set(cfg.cells))
    assert ("exp_mod", 8192) not in bits


def test_empty_suite_writes_header_only(tmp_path):
    path = tmp_path / "empty.csv"
    bench.emit_csv(bench.run_suite(SuiteConfig(cells=())), path)
    assert path.read_bytes() == b"op,bits,iterations,elapsed_s,mops\n"
    assert bench.read_csv(path) == []


def test_csv_round_trip(tmp_path):
    recs = bench.run_suite(SuiteConfig(cells=(("add", 7), ("lmul", 8)), iterations=50, reps=1))
    recs.append(BenchRecord("div", 256, 3, 1e-300, 0.1 + 0.2))
    path = tmp_path / "out.csv"
    bench.emit_csv(recs, path)
    raw = path.read_bytes()
    assert b"\r" not in raw and raw.endswith(b"\n")
    assert bench.read_csv(path) == recs
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    assert rows[0] == list(bench.CSV_HEADER) and len(rows) == 4


def test_csv_write_failure(tmp_path):
    with pytest.raises(OSError) as e:
        bench.emit_csv([], tmp_path / "missing" / "x.csv")
    assert "missing" in str(e.value.filename)


def test_cli_single_cell(tmp_path, capsys):
    path = tmp_path / "one.csv"
    rc = cli.main(["--op", "mul_wrapping", "--bits", "256", "--iters", "100",
                   "--seed", "3", "--reps", "2", "--csv", str(path)])
    assert rc == 0
    (rec,) = bench.read_csv(path)
    assert (rec.op_name, rec.bits, rec.iterations) == ("mul_wrapping", 256, 100)
    assert "Mops/s" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    [], ["--op", "add"], ["--bits", "128"], ["--op", "nope", "--bits", "128"],
    ["--op", "add", "--bits", "100"], ["--op", "add", "--bits", "32"],
    ["--op", "add", "--bits", "128", "--iters", "0"], ["--suite"],
    ["--suite", "--op", "add", "--csv", "x.csv"], ["--bogus"],
])
def test_cli_usage_errors(argv, capsys):
    assert cli.main(argv) == 2
    assert "usage" in capsys.readouterr().err


def test_cli_unwritable(tmp_path):
    rc = cli.main(["--op", "add", "--bits", "128", "--iters", "10", "--reps", "1",
                   "--csv", str(tmp_path / "no" / "x.csv")])
    assert rc == 1


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "recint", "--op", "add", "--bits", "128",
                          "--iters", "10", "--reps", "1"], capture_output=True, text=True)
    assert out.returncode == 0 and "add" in out.stdout
    out = subprocess.run([sys.executable, "-m", "recint", "--op", "add"],
                         capture_output=True, text=True)
    assert out.returncode == 2
