import json
import subprocess
import sys

import jsonschema
import pytest

from isoprod import cli, report
from isoprod.genvec import BuildingDataError
from isoprod.report import Report, load_schema, parse_csv, summary


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(scope="module")
def abelian_json():
    # module-scoped: run once through the real entry point
    proc = subprocess.run([sys.executable, "-m", "isoprod.cli", "classify-abelian", "--format", "json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0, proc.stderr
    return json.loads(proc.stdout)


def test_json_report_valid(abelian_json):
    jsonschema.validate(abelian_json, load_schema())
    assert abelian_json["golden"]["match"] is True
    assert [r["label"] for r in abelian_json["records"]] == ["I", "II", "III", "IV"]
    assert abelian_json["command"][:2] == ["isoprod", "classify-abelian"]


def test_report_round_trip(abelian_json):
    rep = Report.from_dict(abelian_json)
    assert rep.to_dict() == abelian_json


def test_csv_matches_json(capsys, abelian_json):
    code, out, _ = run(capsys, "classify-abelian", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "label,group,order,m,n,gC,gF,components,dimension"
    assert len(lines) == 5
    rows = parse_csv(out)
    from_json = [summary(r) for r in Report.from_dict(abelian_json).records]
    assert rows == from_json


def test_table_and_output_file(capsys, tmp_path):
    target = tmp_path / "t.txt"
    code, out, _ = run(capsys, "classify-abelian", "-o", str(target))
    assert code == 0 and out == ""
    text = target.read_text()
    assert "Z2 x Z8" in text and "golden: match" in text


def test_replay_flag(capsys):
    code, out, _ = run(capsys, "classify-abelian", "--replay-moduli", "--format", "json")
    assert code == 0
    d = json.loads(out)
    jsonschema.validate(d, load_schema())
    assert len(d["replay"]) >= 40 and all(t["ok"] for t in d["replay"])
    assert {t["family"] for t in d["replay"]} == {"I", "II", "III", "IV"}


def test_golden_mismatch_exit_1(capsys, monkeypatch):
    g = report.load_golden()
    g["abelian"][2] = dict(g["abelian"][2], components=1)
    monkeypatch.setattr(report, "load_golden", lambda: g)
    code, out, _ = run(capsys, "classify-abelian")
    assert code == 1
    assert "MISMATCH" in out and "III: components 2 != 1" in out
    code, _, _ = run(capsys, "classify-abelian", "--no-golden")
    assert code == 0


def test_internal_error_exit_3(capsys, monkeypatch):
    def boom(**kw):
        raise RuntimeError("table corrupted")
    monkeypatch.setattr(cli, "classify_abelian", boom)
    code, _, err = run(capsys, "classify-abelian")
    assert code == 3 and "table corrupted" in err

    def bad_data(**kw):
        raise BuildingDataError("freeness", "stabilizers meet")
    monkeypatch.setattr(cli, "classify_abelian", bad_data)
    code, _, err = run(capsys, "classify-abelian")
    assert code == 3 and "freeness" in err


@pytest.mark.parametrize("argv", [
    ["orbits", "Q8", "(0|2^6)", "(1|2^2)"],
    ["orbits", "Z2xZ2", "(0|2^6", "(1|2^2)"],
    ["orbits", "Z2xZ2", "(1|2^2)", "(0|2^6)"],
    ["nonabelian", "--max-order", "61"],
    ["classify-abelian", "--format", "xml"],
    ["frobnicate"],
    ["classify-abelian", "-o", "/nonexistent-dir/x.json"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_orbits_examples(capsys):
    code, out, _ = run(capsys, "orbits", "Z2xZ4", "(0|2^2,4^2)", "(1|2^2)", "--format", "json")
    assert code == 0
    d = json.loads(out)
    jsonschema.validate(d, load_schema())
    assert d["orbits"]["num_classes"] == 2 and d["orbits"]["valid_pairs"] == 1152
    assert sorted(c["size"] for c in d["orbits"]["classes"]) == [384, 768]
    code, out, _ = run(capsys, "orbits", "Z2xZ2", "(0|2^6)", "(1|2^2)")
    assert code == 0 and "1 classes" in out
    code, out, _ = run(capsys, "orbits", "Z4", "(0|2^2,4^2)", "(1|2^2)")
    assert code == 0 and "0 valid pairs" in out


def test_orbits_nonabelian_marks_lower_bound(capsys):
    code, out, _ = run(capsys, "orbits", "S3", "(0|2^6)", "(1|3)", "--format", "json")
    assert code == 0
    o = json.loads(out)["orbits"]
    assert o["num_classes"] >= 1 and o["exact"] is False and "lower bound" in o["note"]


def test_nonabelian_verify_known(capsys):
    code, out, _ = run(capsys, "nonabelian", "--verify-known", "--format", "json")
    assert code == 0
    d = json.loads(out)
    jsonschema.validate(d, load_schema())
    assert [r["group"] for r in d["records"]] == ["S3", "D4", "D6", "A4", "S4", "A5"]
    assert all(r["known"] and not r["exact"] for r in d["records"])


def test_nonabelian_search_json(capsys):
    code, out, _ = run(capsys, "nonabelian", "--format", "json", "--jobs", "2")
    assert code == 0
    d = json.loads(out)
    jsonschema.validate(d, load_schema())
    assert d["golden"]["match"]
    assert any("catalog incomplete" in w for w in d["warnings"])
    assert sum(r["known"] for r in d["records"]) == 6


def test_nonabelian_small_order_and_no_cap(capsys):
    code, out, _ = run(capsys, "nonabelian", "--max-order", "8", "--format", "csv")
    assert code == 0
    assert {r["group"] for r in parse_csv(out)} == {"S3", "D4"}
    code, out, _ = run(capsys, "nonabelian", "--max-order", "61", "--no-cap", "--format", "json")
    assert code == 0
    assert any("above order 60" in w for w in json.loads(out)["warnings"])


def test_nonabelian_table_marks_lower_bounds(capsys):
    code, out, _ = run(capsys, "nonabelian", "--verify-known")
    assert code == 0 and ">=" in out


def test_thread_env_used(capsys, monkeypatch):
    monkeypatch.setenv("ISOPROD_THREADS", "2")
    code, out, _ = run(capsys, "classify-abelian", "--format", "csv")
    assert code == 0 and len(out.strip().splitlines()) == 5


def test_help_exits_0(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0 and "ISOPROD_THREADS" in out
