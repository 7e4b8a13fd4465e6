import json
import subprocess
import sys

import pytest

from typek.cli import lattice_info, main
from typek.report import Report, parse_report


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_usage_errors(capsys):
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "verify", "nonsense")[0] == 2
    assert run(capsys, "lattice", "info", "U(2)+")[0] == 2
    assert run(capsys, "verify", "pf-d8", "--trunc", "-1")[0] == 2
    assert run(capsys, "lattice", "eq", "U", "<0>")[0] == 2


def test_verify_brauer(capsys):
    code, out, _ = run(capsys, "verify", "brauer", "--json")
    assert code == 0
    rep = parse_report(out)
    ms = [c.got for c in rep.checks if c.id.endswith(" m")]
    assert ms == ["1", "2", "3", "1", "2", "1", "2", "3"]
    assert all(c.anchor for c in rep.checks)


def test_json_round_trip_and_determinism(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, first, _ = run(capsys, "verify", "coinv-det", "--json", "--report", str(path))
    assert code == 0
    _, second, _ = run(capsys, "verify", "coinv-det", "--json")
    assert first == second == path.read_text(encoding="utf-8")
    assert parse_report(first).dumps() == first


def test_parse_report_rejects_bad_input():
    good = Report("x")
    good.add("a", True)
    obj = good.to_json()
    with pytest.raises(ValueError):
        parse_report(json.dumps({**obj, "extra": 1}))
    with pytest.raises(ValueError):
        parse_report(json.dumps({**obj, "summary": {"pass": 0, "fail": 0}}))
    obj["checks"][0]["status"] = "maybe"
    with pytest.raises(ValueError):
        parse_report(json.dumps(obj))


def test_failed_check_gives_exit_one(capsys, monkeypatch):
    from typek import suites

    def failing():
        rep = Report("brauer")
        rep.add("forced", False, "x", "y")
        return rep

    monkeypatch.setitem(suites.SUITES, "brauer", failing)
    code, out, _ = run(capsys, "verify", "brauer")
    assert code == 1 and "[FAIL] forced" in out


def test_crashing_suite_is_reported(monkeypatch):
    from typek import suites

    def boom():
        raise RuntimeError("kaput")

    monkeypatch.setitem(suites.SUITES, "enriques", boom)
    rep = suites.run_suite("enriques")
    assert not rep.ok and "kaput" in rep.checks[0].got


def test_pf_elliptic_small_trunc(capsys):
    code, out, _ = run(capsys, "verify", "pf-elliptic", "--trunc", "6", "--json")
    assert code == 0
    checks = {c.id: c for c in parse_report(out).checks}
    assert "15184" in checks["printed Franel terms"].got


def test_lattice_info():
    info = lattice_info("U(2)+E8(-2)")
    assert info["rank"] == 10 and info["signature"] == [1, 9]
    assert info["abs_disc"] == "2^10" and info["even"]
    assert info["discriminant_group"] == [2] * 10


def test_lattice_eq(capsys):
    code, out, _ = run(capsys, "lattice", "eq", "U+U(2)+E8(-2)", "U+U(2)+E8(-2)", "--json")
    assert code == 0 and json.loads(out)["same_gram"]
    assert run(capsys, "lattice", "eq", "U", "<1>+<-1>")[0] == 0
    assert run(capsys, "lattice", "eq", "<1>", "<2>")[0] == 1


def test_series_command(capsys):
    code, out, _ = run(capsys, "series", "theta3", "--trunc", "4", "--json")
    assert code == 0
    assert json.loads(out)["terms"] == {"0": "1", "1/2": "2", "2": "2"}


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "typek.cli", "verify", "duality"], capture_output=True, text=True)
    assert proc.returncode == 0 and "0 failed" in proc.stdout
