import json
import shutil
import subprocess

import pytest

from b0kit.cli import EXIT_BUDGET, EXIT_INPUT, EXIT_OK, EXIT_VERIFY, main


def run_json(capsys, *argv):
    code = main([*argv, "--json"])
    out = capsys.readouterr().out
    return code, json.loads(out) if code == EXIT_OK or out.strip().startswith("{") else None


def test_witness_and_check_cert(capsys, tmp_path):
    path = tmp_path / "w.json"
    assert main(["witness", "--m", "4", "--p", "2", "--n", "2", "--q", "5", "--output", str(path)]) == EXIT_OK
    assert "verified=True" in capsys.readouterr().out
    cert = json.loads(path.read_text())["results"]
    doc = tmp_path / "cert.json"
    doc.write_text(json.dumps(cert))
    assert main(["check-cert", str(doc)]) == EXIT_OK
    cert["A"][0][0] = [(cert["A"][0][0][0] + 1) % 5]
    doc.write_text(json.dumps(cert))
    assert main(["check-cert", str(doc)]) == EXIT_VERIFY


def test_verify_psl(capsys):
    code, man = run_json(capsys, "verify-psl", "--n", "3", "--q", "7")
    assert code == EXIT_OK and man["kind"] == "run-manifest"
    assert man["results"]["reports"][0]["conclusion"]


def test_b0_and_stabilize(capsys):
    code, man = run_json(capsys, "b0", "--catalog", "dihedral:n=8", "--stabilize")
    assert code == EXIT_OK
    rep = man["results"]["reports"][0]
    assert rep["B0_invariants"] == [] and rep["stable"]


def test_wedge_builtin_and_search(capsys):
    code, man = run_json(capsys, "wedge", "--builtin", "ut3f4")
    assert code == EXIT_OK and man["results"]["result"]["rank"] == 0
    code, man = run_json(capsys, "wedge", "--search-nontrivial", "--p", "2", "--r", "4", "--s", "2",
                         "--trials", "50")
    assert code == EXIT_OK and man["results"]["search"]["found"] is None


def test_sigma_inflate_catalog(capsys, tmp_path):
    from b0kit.h1sigma import regression_modules

    mod = tmp_path / "m.json"
    mod.write_text(json.dumps(regression_modules()["x1*(x)v1"].to_json()))
    code, man = run_json(capsys, "sigma", "--module", str(mod))
    assert code in (EXIT_OK, EXIT_VERIFY) and "verdict" in man["results"]
    code, man = run_json(capsys, "inflate", "--catalog", "abelian:invariants=2,2", "--p", "2")
    assert code == EXIT_OK and man["results"]["images"][0]["order"] == 2
    assert main(["catalog"]) == EXIT_OK
    assert "dihedral" in capsys.readouterr().out
    assert main(["catalog", "quaternion"]) == EXIT_OK
    assert "order 8" in capsys.readouterr().out


def test_exceptional_and_main_theorem(capsys, tmp_path):
    assert main(["exceptional", "--n", "2", "--q", "4"]) == EXIT_OK
    assert "B0=0" in capsys.readouterr().out
    grid = tmp_path / "grid.json"
    grid.write_text(json.dumps([[2, 5], [3, 3]]))
    assert main(["main-theorem", "--grid", str(grid)]) == EXIT_OK
    assert "2 pair(s): B0=0 for every pair" in capsys.readouterr().out


def test_replay(capsys, tmp_path):
    path = tmp_path / "man.json"
    assert main(["b0", "--catalog", "quaternion", "--output", str(path)]) == EXIT_OK
    capsys.readouterr()
    assert main(["replay", str(path)]) == EXIT_OK
    assert "identical" in capsys.readouterr().out
    doc = json.loads(path.read_text())
    doc["results"]["reports"][0]["B0_invariants"] = [2]
    path.write_text(json.dumps(doc))
    assert main(["replay", str(path)]) == EXIT_VERIFY
    assert "DIFFERENT" in capsys.readouterr().out


def test_exit_codes(capsys, tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["b0"])
    assert exc.value.code == EXIT_INPUT
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == EXIT_INPUT
    assert main(["b0", "--catalog", "mathieu:n=3"]) == EXIT_INPUT
    assert main(["witness", "--m", "3", "--p", "3", "--n", "1", "--q", "5"]) == EXIT_INPUT
    assert main(["check-cert", str(tmp_path / "missing.json")]) == EXIT_INPUT
    assert main(["b0", "--catalog", "dihedral:n=16", "--max-order", "8"]) == EXIT_BUDGET
    assert main(["verify-psl"]) == EXIT_INPUT


@pytest.mark.skipif(shutil.which("b0kit") is None, reason="console script not installed")
def test_console_script():
    out = subprocess.run(["b0kit", "catalog", "quaternion"], capture_output=True, text=True, timeout=120)
    assert out.returncode == 0 and "order 8" in out.stdout
