import json
import subprocess
import sys

import pytest

from cflink.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_stats_on_path(capsys):
    code, out, _ = run(capsys, "stats", "p4")
    assert code == 0
    header, row = out.strip().splitlines()
    cols = dict(zip(header.split(","), row.split(",")))
    assert (cols["N"], cols["M"], cols["avg_degree"]) == ("4", "3", "1.5")


def test_stats_json(capsys):
    code, out, _ = run(capsys, "stats", "karate", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert (doc["network"], doc["N"], doc["M"]) == ("karate", 34, 78)


def test_missing_dataset_exit_2(capsys):
    code, _, err = run(capsys, "stats", "/no/such/edges.txt")
    assert code == 2
    assert "dataset not found" in err


def test_malformed_edge_list_exit_2(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("a b\nc\n")
    code, _, err = run(capsys, "stats", str(p))
    assert code == 2 and "line 2" in err


def test_unknown_index_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["evaluate", "p100", "--indices", "bogus"])
    assert exc.value.code == 2
    assert "valid" in capsys.readouterr().err


def test_evaluate_is_byte_stable(tmp_path, capsys):
    args = ["evaluate", "ws100", "--runs", "1", "--seed", "7", "--indices", "cn,ra+scf", "--no-timing"]
    c1, out1, _ = run(capsys, *args, "--out", str(tmp_path / "a"))
    c2, out2, _ = run(capsys, *args, "--out", str(tmp_path / "b"))
    assert c1 == c2 == 0
    assert out1 == out2
    for name in ("evaluation.csv", "evaluation.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_evaluate_format_filter(tmp_path, capsys):
    code, _, _ = run(capsys, "evaluate", "p100", "--runs", "2", "--out", str(tmp_path), "--format", "json")
    assert code == 0
    assert [p.name for p in tmp_path.iterdir()] == ["evaluation.json"]
    doc = json.loads((tmp_path / "evaluation.json").read_text())
    assert set(doc["results"]["p100"]) == {
        "cn", "cn+cf", "cn+scf", "ra", "ra+cf", "ra+scf", "cra", "cra+cf", "cra+scf"
    }


def test_benchmark_three_fixtures(tmp_path, capsys):
    code, out, _ = run(capsys, "benchmark", "ws100", "bip60", "karate", "--runs", "2",
                       "--out", str(tmp_path), "--no-timing")
    assert code == 0
    lines = (tmp_path / "benchmark.csv").read_text().strip().splitlines()
    assert len(lines[0].split(",")) == 10
    assert [l.split(",")[0] for l in lines[1:]] == ["ws100", "bip60", "karate", "R_c", "R_g", "mean_auc"]
    assert "R_g" in out


def test_benchmark_skips_missing(capsys):
    code, _, err = run(capsys, "benchmark", "ws100", "nosuchnet", "--runs", "1", "--indices", "cn")
    assert code == 0
    assert "skipping nosuchnet" in err


def test_benchmark_needs_datasets(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["benchmark"])
    assert exc.value.code == 2


def test_sweep_default_fractions(capsys):
    code, out, _ = run(capsys, "sweep", "ws100", "--runs", "1", "--category", "ra")
    assert code == 0
    rows = out.strip().splitlines()[1:]
    assert len(rows) == 30
    assert {r.split(",")[1] for r in rows} == {"ra", "ra+cf", "ra+scf"}


def test_predict_orders_by_score(capsys):
    code, out, _ = run(capsys, "predict", "p4", "--index", "cn", "--top", "5")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "label_u,label_v,score"
    # path a-b-c-d given as 1-2-3-4: only the two distance-two pairs score
    assert lines[1:] == ["1,3,1.0", "2,4,1.0"]


def test_predict_excludes_existing_edges(capsys):
    code, out, _ = run(capsys, "predict", "karate", "--index", "ra+scf", "--top", "10")
    assert code == 0
    assert len(out.strip().splitlines()) == 11


def test_numerical_error_exit_1(capsys):
    code, _, err = run(capsys, "evaluate", "karate", "--runs", "1", "--indices", "katz", "--katz-beta", "1.0")
    assert code == 1
    assert "katz" in err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "cflink", "stats", "k4"], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.splitlines()[1].split(",")[1:3] == ["4", "6"]
