import json
import subprocess
import sys

import pytest

from fimrank.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_headline_rank(capsys):
    code, out, _ = run(capsys, "rank", "s + adj(s)", "--T", "64")
    assert code == 0 and "2/3" in out


def test_zero_rank(capsys):
    code, out, _ = run(capsys, "rank", "0", "--T", "4")
    assert code == 0 and out.startswith("rank 0 ")


def test_rank_json_stdout(capsys):
    code, out, _ = run(capsys, "rank", "s*s", "--T", "8", "--json", "-")
    report = json.loads(out)
    assert code == 0 and report["exact"] == "1/4" and report["expr"] == "s * s"


def test_options_before_command(capsys):
    code, out, _ = run(capsys, "--T", "6", "rank", "s")
    assert code == 0 and "T=6" in out


def test_monoid_commands(capsys):
    code, out, _ = run(capsys, "monoid", "equal", "[[x,0,1],[y,0,1]]", "[[x,0,1],[z,0,1]]")
    assert code == 0 and out.strip() == "equal"
    code, out, _ = run(capsys, "monoid", "equal", "y0", "z0")
    assert code == 0 and out.strip() == "not equal"
    code, out, _ = run(capsys, "monoid", "le", "y1", "y0")
    assert code == 0 and out.startswith("yes")
    code, out, _ = run(capsys, "monoid", "refine", "x0", "y0", "x0", "z0", "--json", "-")
    assert code == 0 and json.loads(out)["refinement"] is not None
    code, out, _ = run(capsys, "monoid", "normalize", "y1 + a1")
    assert out.strip() == "y0"


def test_series_commands(capsys):
    code, out, _ = run(capsys, "series", "zeros", "1/(1-x^2)")
    assert code == 0 and "[1, 3, 5" in out
    code, out, _ = run(capsys, "series", "hadamard", "1/(1-x)", "1/(1-2x)")
    assert code == 0
    code, out, _ = run(capsys, "series", "qinv", "x/(1-x^2)", "--json", "-")
    assert code == 0 and all(json.loads(out)["checks"].values())


def test_lamplighter_trace(capsys):
    code, out, _ = run(capsys, "lamplighter", "trace", "s s*")
    assert code == 0 and out.strip() == "1/2"


def test_usage_errors(capsys):
    assert run(capsys, "rank", "s +")[0] == 2
    assert run(capsys, "monoid", "equal", "x0")[0] == 2
    assert run(capsys, "suite", "no-such-suite")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "rank", "s", "--period-bound", "0")[0] == 2


def test_check_failure_exit(capsys):
    # s is not invertible in component 0
    assert run(capsys, "rank", "inv(s)", "--T", "4")[0] == 1


def test_resource_exit(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, _, err = run(capsys, "series", "zeros", "1/(1-x^5)", "--period-bound", "3", "--json", str(path))
    assert code == 3 and "resource" in err
    report = json.loads(path.read_text())
    assert report["error"]["cause"] == "BoundExceeded"


def test_config_and_report_dir(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "c.toml"
    cfg.write_text("[fimrank]\nT = 10\n")
    monkeypatch.setenv("FIMRANK_REPORT_DIR", str(tmp_path / "reports"))
    code, out, _ = run(capsys, "rank", "s", "--config", str(cfg), "--json", "out.json")
    assert code == 0 and "T=10" in out
    report = json.loads((tmp_path / "reports" / "out.json").read_text())
    assert report["T"] == 10
    # the flag wins over the file
    code, out, _ = run(capsys, "rank", "s", "--config", str(cfg), "--T", "12")
    assert "T=12" in out
    bad = tmp_path / "bad.toml"
    bad.write_text("colour = 3\n")
    assert run(capsys, "rank", "s", "--config", str(bad))[0] == 2


def test_reports_are_byte_stable(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "suite", "hadamard", "--json", str(a))
    run(capsys, "suite", "hadamard", "--json", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_suite_flag_and_schedule_file(capsys, tmp_path):
    sched = tmp_path / "s.json"
    sched.write_text('["1+x"]')
    code, out, _ = run(capsys, "--suite", "tau-ranks", "--schedule", str(sched))
    assert code == 0 and "tau-ranks: pass" in out
    sched.write_text('["2+x"]')
    assert run(capsys, "skew", "verify", "--schedule", str(sched))[0] == 2


def test_console_script_entry():
    out = subprocess.run([sys.executable, "-m", "fimrank.cli", "rank", "s + adj(s)", "--T", "16"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "2/3" in out.stdout
