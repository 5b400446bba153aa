import io
import json
import math
import subprocess
import sys

import pytest

from i3322game.cli import main
from i3322game.quantum import paper_settings, paper_state, settings_to_json


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    assert code == 0, text
    return json.loads(text)


# ---------------------------------------------------------------- classical-table

def test_classical_table_csv():
    code, text = run("classical-table")
    assert code == 0
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    assert lines[1].startswith('g0,"6,9"')


def test_classical_table_equilibria_csv():
    code, text = run("classical-table", "--equilibria")
    assert code == 0 and "g1,g1" in text.splitlines()


def test_classical_table_json():
    data = run_json("classical-table", "--format", "json", "--equilibria")
    assert len(data["table"]["rows"]) == 8
    assert len(data["equilibria"]["equilibria"]) == 10


# ---------------------------------------------------------------- quantum

def test_quantum_paper_payoffs():
    data = run_json("quantum")
    assert data["F_A"] == pytest.approx(0.223651, abs=1e-4)
    assert data["F_B"] == pytest.approx(0.334762, abs=1e-4)
    assert data["local_params"]["M"][0] == pytest.approx(0.808687, abs=1e-5)


def test_quantum_singlet_rows_normalized():
    data = run_json("quantum", "--state", "singlet")
    for row in data["box"]["rows"]:
        assert sum(row["p"]) == pytest.approx(1.0, abs=1e-12)


def test_quantum_state_file_roundtrip(tmp_path):
    path = tmp_path / "rho.json"
    path.write_text(json.dumps(paper_state().to_json()))
    assert run_json("quantum", "--state", "file", "--state-file", str(path)) == run_json("quantum")


def test_quantum_rejects_unnormalized_state(tmp_path, capsys):
    path = tmp_path / "rho.json"
    bad = paper_state().to_json()
    bad["rho"] = [[{"re": z["re"] * 0.9, "im": z["im"] * 0.9} for z in row] for row in bad["rho"]]
    path.write_text(json.dumps(bad))
    code, _ = run("quantum", "--state", "file", "--state-file", str(path))
    assert code == 1
    assert "trace" in capsys.readouterr().err


def test_quantum_missing_state_file(tmp_path):
    code, _ = run("quantum", "--state", "file", "--state-file", str(tmp_path / "nope.json"))
    assert code == 1


def test_quantum_angles_file(tmp_path):
    path = tmp_path / "angles.json"
    path.write_text(json.dumps(settings_to_json(*paper_settings())))
    data = run_json("quantum", "--angles", "file", "--angles-file", str(path))
    assert data["S"] == pytest.approx(0.012859, abs=1e-5)


def test_quantum_rejects_degrees(tmp_path):
    path = tmp_path / "angles.json"
    data = settings_to_json(*paper_settings())
    data["units"] = "degrees"
    path.write_text(json.dumps(data))
    code, _ = run("quantum", "--angles", "file", "--angles-file", str(path))
    assert code == 1


# ---------------------------------------------------------------- inequality

def test_inequality_i3322_paper():
    data = run_json("inequality", "i3322")
    assert data["s"] == pytest.approx(0.012859, abs=1e-5)
    assert data["max_discrepancy"] < 1e-9
    assert set(data["forms"]) == {"local_params", "full_probability", "coefficient_table"}


def test_inequality_box_file(tmp_path):
    from i3322game.quantum import box_from_state
    path = tmp_path / "box.json"
    path.write_text(json.dumps(box_from_state(paper_state(), *paper_settings()).to_json()))
    data = run_json("inequality", "i3322", "--box-file", str(path))
    assert data["s"] == pytest.approx(0.012859, abs=1e-5)


def test_inequality_chsh():
    paper = run_json("inequality", "chsh")
    assert not paper["violates"] and paper["max_chsh"] < 2
    singlet = run_json("inequality", "chsh", "--state", "singlet")
    assert singlet["violates"]
    assert singlet["max_chsh"] == pytest.approx(2 * math.sqrt(2), abs=1e-9)


# ---------------------------------------------------------------- optimize

def test_optimize_deterministic_output():
    a = run("optimize", "--budget", "300", "--seed", "5")
    b = run("optimize", "--budget", "300", "--seed", "5")
    assert a == b and a[0] == 0


def test_optimize_singlet_full():
    data = run_json("optimize", "--state", "singlet", "--restriction", "full", "--budget", "5000")
    assert data["best_s"] == pytest.approx(0.25, abs=1e-3)


def test_optimize_paper_plane_welfare():
    data = run_json("optimize", "--restriction", "plane", "--warm-start-paper", "--budget", "2000")
    assert data["best_welfare"] >= 15.0772 / 27 - 1e-4


def test_optimize_bad_budget():
    assert run("optimize", "--budget", "0")[0] == 1


# ---------------------------------------------------------------- reproduce / usage

def test_reproduce_passes():
    code, text = run("reproduce", "--budget", "5000")
    assert code == 0
    assert "M_1" in text and "0.808687" in text


def test_reproduce_detects_injected_fault():
    code, text = run("reproduce", "--budget", "500", "--format", "json", "--inject-utility-fault")
    assert code == 1
    failed = {c["name"] for c in json.loads(text)["checks"] if not c["pass"]}
    assert "classical_table_x27" in failed


@pytest.mark.parametrize("argv", [[], ["bogus"], ["optimize", "--restriction", "sphere"],
                                  ["inequality", "bell"]])
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "i3322game", "inequality", "chsh", "--state", "singlet"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["violates"] is True
