from __future__ import annotations

import json

import jsonschema
import pytest

from rocnpmle.analysis import ANALYSIS_SCHEMA
from rocnpmle.cli import EXIT_DEGENERATE, EXIT_INPUT, EXIT_OK, EXIT_VERIFY, main

from .conftest import RAD5_M, RAD5_N

RAD5 = "data/radiologist5.csv"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_text(capsys):
    code, out, _ = run(capsys, "analyze", RAD5)
    assert code == EXIT_OK
    assert "k=10  merged k=6" in out
    assert "0.30 0.41 0.80 2.25 4.00 inf" in out
    line = next(l for l in out.splitlines() if l.startswith("constrained"))
    assert line.split()[1] == "0.68472"
    line = next(l for l in out.splitlines() if l.startswith("unconstrained"))
    assert line.split()[1] == "0.67309"


def test_analyze_json_validates(capsys):
    code, out, _ = run(capsys, "analyze", RAD5, "--json")
    assert code == EXIT_OK
    doc = json.loads(out)
    jsonschema.validate(doc, ANALYSIS_SCHEMA)
    assert doc["constrained"]["auc_exact"] == "493/720"
    assert doc["merged"]["diseased"] == [10, 12, 4, 9, 4, 1]
    assert doc["merged"]["ratios"][-1] is None


def test_scores_file_gives_identical_report(tmp_path, capsys):
    p = tmp_path / "scores.csv"
    rows = ["score,label"]
    for i, (mi, ni) in enumerate(zip(RAD5_M, RAD5_N), start=1):
        rows += [f"{i},1"] * mi + [f"{i},0"] * ni
    p.write_text("\n".join(rows) + "\n")
    _, a, _ = run(capsys, "analyze", RAD5, "--json", "--label", "x")
    _, b, _ = run(capsys, "analyze", str(p), "--json", "--label", "x")
    assert json.loads(a) == json.loads(b)


def test_output_files(tmp_path, capsys):
    curve, hull, merged = tmp_path / "c.csv", tmp_path / "h.csv", tmp_path / "m.csv"
    code, _, _ = run(capsys, "analyze", RAD5, "--curve-out", str(curve),
                     "--hull-out", str(hull), "--merged-out", str(merged))
    assert code == EXIT_OK
    assert curve.read_text().splitlines()[0] == "fpr,tpr"
    assert len(curve.read_text().splitlines()) == 12
    assert len(hull.read_text().splitlines()) == 8
    lines = merged.read_text().splitlines()
    assert lines[0] == "category,diseased,nondiseased,original_categories"
    assert lines[2] == "2,12,29,2;3;4"


def test_single_category_file(tmp_path, capsys):
    p = tmp_path / "one.csv"
    p.write_text("category,diseased,nondiseased\n1,4,6\n")
    code, out, _ = run(capsys, "analyze", str(p), "--json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["unconstrained"]["auc"] == doc["constrained"]["auc"] == 0.5


def test_degenerate_exit_code(tmp_path, capsys):
    p = tmp_path / "d.csv"
    p.write_text("category,diseased,nondiseased\n1,0,3\n2,1,2\n")
    code, out, err = run(capsys, "analyze", str(p))
    assert code == EXIT_DEGENERATE
    assert "n/a" in out and "warning" in err


def test_parse_error_exit_code(tmp_path, capsys):
    p = tmp_path / "bad.csv"
    p.write_text("category,diseased,nondiseased\n1,-1,3\n")
    code, _, err = run(capsys, "analyze", str(p))
    assert code == EXIT_INPUT
    assert "row 2" in err
    code, _, _ = run(capsys, "analyze", str(tmp_path / "missing.csv"))
    assert code == EXIT_INPUT


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--counts", RAD5)
    assert code == EXIT_OK
    assert out.strip().endswith("PASS")
    code, out, _ = run(capsys, "verify", "--fuzz", "200", "--max-k", "8", "--json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["pass"] and len(doc["instances"]) == 200


def test_verify_oracle_limit(tmp_path, capsys):
    p = tmp_path / "big.csv"
    p.write_text("category,diseased,nondiseased\n" + "".join(f"{i},1,1\n" for i in range(1, 26)))
    code, _, err = run(capsys, "verify", "--counts", str(p), "--max-k", "30")
    assert code == EXIT_VERIFY
    assert "exceeds" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["simulate-coverage", "--family", "normal", "--auc", ".84", "--m", "10", "--reps", "0"],
        ["verify"],
        ["analyze", RAD5, "--alpha", "2"],
    ],
)
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == EXIT_INPUT


def test_invalid_model_parameter(capsys):
    code, _, err = run(capsys, "simulate-coverage", "--family", "normal", "--auc", "1.2", "--m", "10")
    assert code == EXIT_INPUT
    assert "target AUC" in err


def test_simulate_coverage_row(capsys):
    code, out, _ = run(capsys, "simulate-coverage", "--family", "normal", "--auc", ".84",
                       "--m", "20", "--ratio", "2", "--k", "5", "--reps", "50", "--seed", "42")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "family,auc,M,r_a,k,miss_rate"
    assert lines[1].startswith("normal,0.84,20,2,5,")


@pytest.mark.parametrize("cmd, extra", [
    ("simulate-coverage", ["--auc", ".7", ".9", "--m", "20"]),
    ("simulate-sd", ["--auc", ".8", "--m", "20", "--ratio", "1", "2"]),
    ("simulate-bias", ["--auc", ".7", ".9", "--m-diseased", "20", "--n-nondiseased", "10"]),
])
def test_simulate_is_byte_identical(tmp_path, capsys, cmd, extra):
    outs = []
    for i, threads in enumerate(("1", "4", "1")):
        path = tmp_path / f"{i}.csv"
        code = main([cmd, "--family", "uniform", "--reps", "40", "--seed", "3",
                     "--threads", threads, "--out", str(path), *extra])
        assert code == EXIT_OK
        outs.append(path.read_bytes())
    assert outs[0] == outs[1] == outs[2]
