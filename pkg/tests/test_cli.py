import json
import subprocess
import sys

import pytest

from hopfgalois.catalog import ANCHORS, CATALOG
from hopfgalois.cli import FORMAT, emit_report, main, parse_structured
from hopfgalois.report import Check
from hopfgalois.suites import SuiteReport, run_suite


def test_galois_suite_passes(capsys):
    assert main(["verify", "--fixture", "kZ2-sigma-neg1", "--suite", "galois"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("hopfgalois verify: 1 suite run(s)")
    assert "[kZ2-sigma-neg1] galois: ok" in out
    assert "FAIL" not in out


def test_corrupted_fixture_fails_with_witness(capsys):
    assert main(["verify", "--fixture", "corrupted-demo"]) == 1
    out = capsys.readouterr().out
    assert "FAIL hopf.antipode  witness=(g)" in out


def test_empty_report():
    assert emit_report([]) == "hopfgalois verify: 0 suite run(s), 0 checks, 0 failed\n"
    doc = json.loads(emit_report([], "structured"))
    assert doc == {"format": FORMAT, "summary": {"checks": 0, "failed": 0, "reports": 0}, "reports": []}


def test_failing_check_serialisation():
    r = SuiteReport("x", "hopf", [Check("hopf.antipode", False, ("g", 3)), Check("hopf.unit", True, None)])
    doc = json.loads(emit_report([r], "structured"))
    c0, c1 = doc["reports"][0]["checks"]
    assert c0 == {"id": "hopf.antipode", "anchor": "def:hopf-algebra", "status": "fail",
                  "witness": ["g", 3], "elapsed": None}
    assert c1["status"] == "pass" and c1["witness"] is None
    assert doc["summary"]["failed"] == 1


def test_structured_round_trip():
    reports = run_suite(["kZ2-sigma-neg1", "corrupted-demo"])
    text = emit_report(reports, "structured")
    back = parse_structured(text)
    assert emit_report(back, "structured") == text
    assert [(r.fixture, r.suite, r.ok) for r in back] == [(r.fixture, r.suite, r.ok) for r in reports]


def test_out_file_and_timings(tmp_path):
    out = tmp_path / "r.json"
    assert main(["verify", "--fixture", "kZ2", "--report", "structured", "--timings", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert all(isinstance(c["elapsed"], float) for r in doc["reports"] for c in r["checks"])


def test_load_file(tmp_path, capsys):
    f = tmp_path / "extra.hg"
    f.write_text("cocycle mine measuring=Q-triv-kZ2\nsigma(g,g) = 2\n")
    assert main(["verify", "--load", str(f), "--suite", "galois"]) == 0
    assert "[mine] galois: ok" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    ["verify", "--fixture", "nope"],
    ["verify", "--fixture", "kZ2", "--suite", "nope"],
    ["verify"],
    ["verify", "--load", "/nonexistent/file.hg"],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == 2
    assert "hopfgalois: error:" in capsys.readouterr().err


def test_parse_error_exit(tmp_path, capsys):
    f = tmp_path / "bad.hg"
    f.write_text("hopf h\nbasis 1 g\nunit 1\nmult(g,g) = q\n")
    assert main(["verify", "--load", str(f)]) == 2
    assert "line 4, col 13" in capsys.readouterr().err


def test_bad_conductor_env(monkeypatch, capsys):
    monkeypatch.setenv("HOPFGALOIS_CONDUCTOR", "-3")
    assert main(["verify", "--fixture", "kZ2"]) == 2


def test_list(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    assert "corrupted-demo" not in out
    assert any(line.startswith("kZ2-sigma-neg1") and "corollaries" in line for line in out.splitlines())


def test_catalog_anchors():
    assert set(CATALOG.values()) <= set(ANCHORS)
    assert set(ANCHORS) == set(CATALOG.values())


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "hopfgalois", "verify", "--fixture", "kZ2", "--suite", "hopf"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert "[kZ2] hopf: ok" in r.stdout
