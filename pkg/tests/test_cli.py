import json
import subprocess
import sys

import pytest

from centw.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_basis_rows(capsys):
    code, out = run(capsys, "basis", "--pyramid", "2,3,4")
    assert code == 0
    rows = out.splitlines()
    assert len(rows) == 23
    assert rows[0] == "E[1,1,0]"


def test_hilbert_line(capsys):
    code, out = run(capsys, "hilbert", "--pyramid", "1", "--cap", "4")
    assert code == 0
    assert out.strip() == "1 1 2 3 5"


def test_verify_dw(capsys, tmp_path):
    target = tmp_path / "dw.json"
    code, out = run(capsys, "verify", "dw", "--pyramid", "1,2", "--out", str(target))
    assert code == 0
    assert "3 generators certified" in out
    assert out.startswith("check: ")
    data = json.loads(target.read_text())
    assert data["schema"] == 1
    assert data["ok"] is True
    assert data["reports"][0]["details"]["count"] == 3


@pytest.mark.parametrize("what", ["d2", "lemmas", "miura", "critical"])
def test_verify_families(capsys, what):
    code, out = run(capsys, "verify", what, "--pyramid", "1,1", "--cap", "1")
    assert code == 0
    assert "pass" in out


def test_bad_config_exit_codes(capsys):
    assert main(["hilbert", "--pyramid", "2,1"]) == 2
    assert main(["basis", "--pyramid", "a"]) == 2
    assert main(["generators", "--pyramid", "1", "--level", "x"]) == 2
    assert main(["rank", "--pyramid", "1", "--cap", "-1"]) == 2
    assert main(["nonsense"]) == 2
    capsys.readouterr()


def test_verification_failure_exit_code(capsys, monkeypatch):
    import centw.cli as cli
    from centw.brst import Report

    monkeypatch.setattr(cli, "verify_miura",
                        lambda p: Report("miura", str(p), 0, status="fail", statement="x"))
    code, out = run(capsys, "verify", "miura", "--pyramid", "1")
    assert code == 1
    assert "fail" in out


def test_generators_json(capsys, tmp_path):
    target = tmp_path / "g.json"
    code, _ = run(capsys, "generators", "--pyramid", "1,1", "--out", str(target))
    assert code == 0
    data = json.loads(target.read_text())
    assert data["certified"] is True
    assert [(g["l"], g["r"]) for g in data["generators"]] == [(1, 0), (2, 0)]
    assert data["level"] == "k"


def test_generators_numeric_level(capsys):
    code, out = run(capsys, "generators", "--pyramid", "1,1", "--level", "1/2",
                    "--backend", "full")
    assert code == 0
    assert "(3/2) E[2,2,0;-2] |0>" in out


def test_output_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for target in (a, b):
        assert main(["rank", "--pyramid", "1,1", "--cap", "3", "--out", str(target)]) == 0
    assert a.read_bytes() == b.read_bytes()
    capsys.readouterr()


def test_form_and_structure(capsys):
    code, out = run(capsys, "form", "--pyramid", "1,1")
    assert code == 0
    assert "<E[1,1,0], E[1,1,0]> = 1/2" in out
    code, out = run(capsys, "structure-consts", "--pyramid", "1,2")
    assert code == 0
    assert "[E[1,1,0], E[2,1,0]] = (-1) E[2,1,0]" in out


def test_miura_command(capsys):
    code, out = run(capsys, "miura", "--pyramid", "1,1")
    assert code == 0
    assert out.splitlines()[0] == "v_1^(0)|0> = (1) e[1,1,0;-1] |0> + (1) e[2,2,0;-1] |0>"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "centw", "hilbert", "--pyramid", "1,1",
                          "--cap", "3"], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.strip() == "1 1 3 5"
