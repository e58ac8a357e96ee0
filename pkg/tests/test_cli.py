import io
import json
import subprocess
import sys

import pytest

from monomorse.cli import RunConfig, UsageError, main, run


def call(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def as_json(argv, capsys):
    code, out, _ = call(argv + ["--format", "json"], capsys)
    doc = json.loads(out)
    assert doc["schema"] == "monomorse/1"
    return code, doc


def test_hilbert_5gon(capsys):
    code, doc = as_json(["hilbert", "corpus:5gon", "--bound-d", "4"], capsys)
    assert code == 0
    assert doc["numerator_modes_agree"] and doc["matches_monomial_count"]
    assert doc["numerator"].startswith("1 - x1*x2*t^2")


def test_golod_5gon(capsys):
    code, doc = as_json(["golod", "corpus:5gon"], capsys)
    assert code == 0 and doc["final"] == "not-golod"


def test_selftest(capsys):
    code, out, _ = call(["selftest"], capsys)
    assert code == 0
    assert "0 failed" in out


def test_betti_feeds_golod_bound(tmp_path, capsys):
    code, out, _ = call(["betti", "corpus:path3", "--format", "json"], capsys)
    assert code == 0
    path = tmp_path / "b.json"
    path.write_text(out)
    code, doc = as_json(["poincare", "corpus:path3", "--golod-bound", str(path),
                         "--bound-d", "5", "--bound-h", "4", "--check"], capsys)
    assert code == 0
    assert doc["golod_bound"]["equal"]
    assert doc["tor_check"]["match"]


def test_matching_kinds(capsys):
    for kind, name in (("standard", "path4"), ("nbc", "triangle"), ("gcd", "sqfree_stable4")):
        code, doc = as_json(["matching", f"corpus:{name}", "--kind", kind], capsys)
        assert code == 0, kind
        assert doc.get("valid", True) and doc.get("homology_preserved", True)


def test_koszul_partial_exit(capsys):
    code, doc = as_json(["koszul", "corpus:5gon", "--bound-d", "3"], capsys)
    assert code == 2 and doc["partial"]
    code, doc = as_json(["koszul", "corpus:5gon"], capsys)
    assert code == 0 and not doc["product_trivial"]


def test_poset_and_language(capsys):
    code, doc = as_json(["poset", "corpus:zigzag"], capsys)
    assert code == 0 and doc["methods_agree"]
    code, doc = as_json(["language", "corpus:triangle", "--length", "4"], capsys)
    assert code == 0 and doc["matches_r_monomials"]
    code, doc = as_json(["language", "corpus:triangle", "--start", "1", "--length", "3"], capsys)
    assert code == 0 and len(doc["counts"]) == 3


def test_usage_errors_exit_one(tmp_path, capsys):
    assert call(["hilbert"], capsys)[0] == 1
    assert call(["frobnicate", "x"], capsys)[0] == 1
    assert call(["betti", str(tmp_path / "missing.ideal")], capsys)[0] == 1
    assert call(["betti", "corpus:x2", "--char", "6"], capsys)[0] == 1
    assert call(["language", "corpus:generic3"], capsys)[0] == 1
    assert call(["poincare", "corpus:twisted", "--bound-d", "0"], capsys)[0] == 1


def test_parse_error_reports_line(tmp_path, capsys):
    f = tmp_path / "bad.ideal"
    f.write_text("vars: 2\nx1\nx9\n")
    code, _, err = call(["betti", str(f)], capsys)
    assert code == 1
    assert "bad.ideal:3:" in err


def test_stdin_input(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO("vars: 2\nx1*x2\n"))
    code, out, _ = call(["betti", "-"], capsys)
    assert code == 0 and "x1*x2" in out


def test_run_config_validation():
    with pytest.raises(UsageError):
        RunConfig("betti", "corpus:x2", H=0)
    with pytest.raises(UsageError):
        RunConfig("betti", "corpus:x2", char=9)


def test_output_is_deterministic():
    cmd = [sys.executable, "-m", "monomorse.cli", "golod", "corpus:triangle", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b


def test_run_writes_to_stream():
    buf = io.StringIO()
    assert run(RunConfig("hilbert", "corpus:single", D=3), buf) == 0
    assert "numerator" in buf.getvalue()
