import io
import subprocess
import sys

import pytest

from nmlcause.cli import EXIT_INPUT, EXIT_OK, main
from nmlcause.evaluation import run_synthetic_campaign
from nmlcause.files import format_bits, results_csv


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def pair_file(tmp_path):
    p = tmp_path / "pair.txt"
    p.write_text("".join(f"{i % 5} {(i % 5) // 2} {i % 5}\n" for i in range(40)))
    return p


def test_infer_identical_columns(pair_file):
    code, out = run("infer", str(pair_file), "--x", "0", "--y", "2")
    assert code == EXIT_OK
    assert "direction: undecided" in out
    assert "delta: 0.000000" in out


def test_infer_column_selection(pair_file):
    _, a = run("infer", str(pair_file), "--x", "0", "--y", "1")
    _, b = run("--x", "0", "--y", "1", "infer", str(pair_file))
    _, c = run("infer", str(pair_file))
    assert a == b == c
    assert "undecided" not in a


def test_infer_json(pair_file):
    code, out = run("infer", str(pair_file), "--json")
    assert code == 0 and '"direction"' in out


@pytest.mark.parametrize("content", ["", "1 2\n3\n", "# c\n"])
def test_infer_input_errors(tmp_path, content, capsys):
    p = tmp_path / "bad.txt"
    p.write_text(content)
    code, out = run("infer", str(p))
    assert code == EXIT_INPUT
    assert out == ""
    assert "error" in capsys.readouterr().err


def test_missing_file():
    assert run("infer", "/nonexistent/pair.txt")[0] == EXIT_INPUT


def test_sc(pair_file):
    code, out = run("sc", str(pair_file), "--column", "1")
    assert code == 0
    assert "m: 3" in out and "n: 40" in out


def test_synth_bench_rate_round_trip(tmp_path):
    out_dir = tmp_path / "syn"
    code, _ = run("synth", "geometric", "--pairs", "6", "--n", "300", "--seed", "5", "--out", str(out_dir))
    assert code == 0
    assert (out_dir / "truth.tsv").read_text().count("\n") == 6
    assert len(list(out_dir.glob("geometric-*.txt"))) == 6
    code, bench = run("bench", str(out_dir), str(out_dir / "truth.tsv"))
    assert code == 0
    # verdicts from the files match the in-process campaign
    assert bench == results_csv(run_synthetic_campaign("geometric", 6, 300, 5))
    _, campaign = run("campaign", "geometric", "--pairs", "6", "--n", "300", "--seed", "5")
    assert campaign == bench

    results = tmp_path / "r.csv"
    results.write_text(bench)
    code, curve = run("rate", str(results), "--rates", "0.5,1.0")
    assert code == 0
    assert curve.splitlines()[0] == "rate,accuracy"
    assert len(curve.splitlines()) == 3


def test_synth_infer_round_trip(tmp_path):
    run("synth", "uniform", "--pairs", "3", "--n", "200", "--seed", "2", "--out", str(tmp_path))
    expected = run_synthetic_campaign("uniform", 3, 200, 2)
    for r in expected:
        _, out = run("infer", str(tmp_path / f"{r.pair_id}.txt"))
        assert f"direction: {r.verdict.direction.value}\n" in out
        assert f"delta: {format_bits(r.verdict.delta)}\n" in out


def test_synth_unwritable(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert run("synth", "uniform", "--pairs", "1", "--out", str(blocker / "sub"))[0] == EXIT_INPUT


def test_unknown_family(tmp_path):
    assert run("synth", "zipf", "--out", str(tmp_path))[0] == EXIT_INPUT


def test_bench_no_scored_pairs(tmp_path):
    (tmp_path / "truth.tsv").write_text("x\tXtoY\n")
    assert run("bench", str(tmp_path), str(tmp_path / "truth.tsv"))[0] == EXIT_INPUT


def test_profile_output():
    code, out = run("profile", "--n-grid", "500", "--m-grid", "2,4", "--repeats", "1")
    assert code == 0
    assert len(out.splitlines()) == 3


def test_output_is_stable(pair_file):
    assert run("infer", str(pair_file)) == run("infer", str(pair_file))


def test_module_entry_point_exit_codes(tmp_path):
    p = tmp_path / "p.txt"
    p.write_text("1 2\n")
    ok = subprocess.run([sys.executable, "-m", "nmlcause", "infer", str(p)], capture_output=True, text=True)
    assert ok.returncode == 0 and ok.stdout.startswith("direction:")
    bad = subprocess.run([sys.executable, "-m", "nmlcause", "infer", str(tmp_path / "nope")],
                         capture_output=True, text=True)
    assert bad.returncode == 2 and bad.stdout == "" and "error" in bad.stderr
