import io as stdio
from contextlib import redirect_stderr, redirect_stdout

import pytest

from matchdist.cli import main


def run_cli(args):
    out, err = stdio.StringIO(), stdio.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        try:
            code = main(args)
        except SystemExit as exc:  # argparse usage errors
            code = exc.code
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def dataset(tmp_path):
    for name, seed in (("a.txt", 1), ("b.txt", 2)):
        code, _, _ = run_cli([
            "gen", "--vertices", "7", "--maximal", "8", "--dim", "1",
            "--seed", str(seed), "--out", str(tmp_path / name),
        ])
        assert code == 0
    return tmp_path


def test_gen_deterministic(dataset, tmp_path):
    run_cli(["gen", "--vertices", "7", "--maximal", "8", "--dim", "1",
             "--seed", "1", "--out", str(tmp_path / "again.txt")])
    assert (tmp_path / "again.txt").read_bytes() == (dataset / "a.txt").read_bytes()


def test_dist_identical_inputs(dataset):
    a = str(dataset / "a.txt")
    code, out, _ = run_cli(["dist", a, a, "--epsilon", "1000"])
    assert code == 0
    report = dict(line.split() for line in out.splitlines())
    assert report["delta"] == "0.0"
    assert report["converged"] == "yes"


def test_dist_relative_zero_distance_exit_code(dataset):
    a = str(dataset / "a.txt")
    code, out, _ = run_cli(["dist", a, a, "--epsilon", "0.5", "--relative"])
    assert code == 2
    report = dict(line.split() for line in out.splitlines())
    assert report["converged"] == "no"
    assert report["rho"] == "0.0"


def test_dist_stdout_deterministic_and_wall_time_on_stderr(dataset):
    args = ["dist", str(dataset / "a.txt"), str(dataset / "b.txt"),
            "--epsilon", "0.5", "--relative"]
    code1, out1, err1 = run_cli(args)
    code2, out2, err2 = run_cli(args)
    assert code1 == code2 == 0
    assert out1 == out2
    assert "wall_ms" in err1 and "wall_ms" not in out1


def test_dist_trace_roundtrip(dataset, tmp_path):
    trace = tmp_path / "trace.csv"
    code, out, _ = run_cli([
        "dist", str(dataset / "a.txt"), str(dataset / "b.txt"),
        "--epsilon", "0.5", "--relative", "--trace", str(trace),
    ])
    assert code == 0
    report = dict(line.split() for line in out.splitlines())
    rows = trace.read_text().splitlines()
    assert rows[0].startswith("call,elapsed_ms,rho,upper,rel_error,type,")
    last = rows[-1].split(",")
    assert last[0] == report["calls"]
    assert last[2] == report["rho"]


def test_dist_dump_diagrams(dataset, tmp_path):
    dd = tmp_path / "dd"
    code, _, _ = run_cli([
        "dist", str(dataset / "a.txt"), str(dataset / "b.txt"),
        "--epsilon", "0.5", "--relative", "--dump-diagrams", str(dd),
    ])
    assert code == 0
    for name in ("f1_diagram.txt", "f2_diagram.txt"):
        lines = (dd / name).read_text().splitlines()
        assert lines[0] == "# dim=0"
        assert lines[1].startswith("# slice type=")


def test_dist_usage_error_exit_one(dataset):
    code, _, err = run_cli(["dist", str(dataset / "a.txt")])
    assert code == 1
    code, _, err = run_cli(["dist", "missing_a", "missing_b", "--epsilon", "0.1"])
    assert code == 1
    # budget without priority traversal is a config error
    code, _, err = run_cli(["dist", str(dataset / "a.txt"), str(dataset / "b.txt"),
                            "--epsilon", "0.1", "--budget-ms", "5"])
    assert code == 1


def test_heatmap_depth_zero_equals_initial_evals(dataset, tmp_path):
    from matchdist.complexes import normalize_pair
    from matchdist.io import load_bifiltration
    from matchdist.slices import center, initial_boxes
    from matchdist.solver import eval_slice

    out = tmp_path / "hm"
    code, _, _ = run_cli(["heatmap", str(dataset / "a.txt"), str(dataset / "b.txt"),
                          "--depth", "0", "--out", str(out)])
    assert code == 0
    F1, F2, _ = normalize_pair(load_bifiltration(dataset / "a.txt"),
                               load_bifiltration(dataset / "b.txt"))
    for box in initial_boxes(F1, F2):
        text = (out / f"heatmap_{box.stype.value}.csv").read_text().splitlines()
        assert text[0] == f"# type={box.stype.value} depth=0"
        assert float(text[1]) == eval_slice(F1, F2, center(box), 0)
    comp = (out / "heatmap_composite.csv").read_text().splitlines()
    assert comp[0] == "# type=composite depth=0"
    assert len(comp[-1].split(",")) == 2


def test_heatmap_identical_inputs_all_zero(dataset, tmp_path):
    out = tmp_path / "hmz"
    code, _, _ = run_cli(["heatmap", str(dataset / "a.txt"), str(dataset / "a.txt"),
                          "--depth", "1", "--out", str(out)])
    assert code == 0
    for line in (out / "heatmap_composite.csv").read_text().splitlines():
        if line.startswith("#"):
            continue
        assert all(float(v) == 0.0 for v in line.split(","))


def test_heatmap_depth_too_large(dataset, tmp_path):
    code, _, err = run_cli(["heatmap", str(dataset / "a.txt"), str(dataset / "b.txt"),
                            "--depth", "11", "--out", str(tmp_path / "x")])
    assert code == 1
    assert "depth" in err


def test_heatmap_deterministic(dataset, tmp_path):
    args = lambda d: ["heatmap", str(dataset / "a.txt"), str(dataset / "b.txt"),
                      "--depth", "2", "--out", str(tmp_path / d)]
    run_cli(args("h1"))
    run_cli(args("h2"))
    for f in sorted((tmp_path / "h1").iterdir()):
        assert f.read_bytes() == (tmp_path / "h2" / f.name).read_bytes()


def test_bench_two_files(dataset, tmp_path):
    out_csv = tmp_path / "bench.csv"
    code, out, _ = run_cli(["bench", str(dataset), "--epsilon", "0.5", "--relative",
                            "--out", str(out_csv)])
    assert code == 0
    lines = out.splitlines()
    data_rows = [l for l in lines if l.startswith("a.txt")]
    assert len(data_rows) == 3  # one pair, three bounds
    assert any(l.startswith("calls_ratio_G/C") for l in lines)
    # reduction rate column is consistent with calls and level
    for row in data_rows:
        cells = row.split("\t")
        calls, lvl, rate = int(cells[3]), int(cells[6]), float(cells[7])
        assert rate == 1.0 - calls / 4.0**lvl
    assert out_csv.read_text().splitlines()[0].startswith("fileA,fileB,bound")


def test_bench_empty_dataset(tmp_path):
    code, _, err = run_cli(["bench", str(tmp_path), "--epsilon", "0.5"])
    assert code == 1
    assert "no usable pairs" in err
