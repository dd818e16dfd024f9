import json
import math
import os
import subprocess

import pytest

CLI = os.environ.get("LIEWEDGE_CLI", "liewedge")
DATA = os.environ.get("LIEWEDGE_DATA", os.path.join(os.path.dirname(__file__), "..", "..", "data", "systems"))


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True, timeout=120)


def system(name):
    return os.path.join(DATA, name)


def test_example_two_dimensions():
    r = run("example", "2")
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["schema"] == "liewedge/1"
    assert list(doc)[:6] == ["schema", "command", "input", "tolerances", "dimensions", "result"]
    assert doc["dimensions"]["edge"] == 1
    assert doc["dimensions"]["wedge"] == 4


def test_output_is_deterministic():
    a = run("semialgebra", "--system", system("example2.sys"), "--pairs", "100")
    b = run("semialgebra", "--system", system("example2.sys"), "--pairs", "100")
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout


def test_figdata_2a():
    r = run("figdata", "2a", "--theta-steps", "360")
    assert r.returncode == 0
    lines = r.stdout.strip().split("\n")
    assert lines[0] == "theta,c_Hx,c_Hz,c_Gamma0"
    assert len(lines) == 361
    for line in lines[1:]:
        th, hx, hz, g = map(float, line.split(","))
        assert abs(hx - math.sin(th)) < 1e-12
        assert abs(hz - math.cos(th)) < 1e-12
        assert g == 1.0


def test_figdata_2b_edge_offsets():
    r = run("figdata", "2b", "--theta-steps", "12")
    lines = r.stdout.strip().split("\n")
    assert lines[0] == "theta,edge_coef,c_Hy,c_Hz,c_Gamma0"
    assert len(lines) == 37
    assert {float(l.split(",")[1]) for l in lines[1:]} == {-1.0, 0.0, 1.0}


def test_channel_identity_at_zero_rate():
    r = run("channel", "phase_flip", "--gamma", "0", "--t", "1")
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["result"]["kraus_rank"] == 1
    re = doc["result"]["propagator"]["re"]
    assert re == [[1.0 if i == j else 0.0 for j in range(4)] for i in range(4)]


def test_conditions_example_one():
    r = run("conditions", "--system", system("example1.sys"))
    assert r.returncode == 0
    assert json.loads(r.stdout)["result"]["conditions"]["holds_H"] is True


def test_wedge_dump_and_output_file(tmp_path):
    out = tmp_path / "w.json"
    r = run("-o", str(out), "wedge", "--system", system("example3.sys"))
    assert r.returncode == 0
    doc = json.loads(out.read_text())
    assert doc["dimensions"]["cone_span"] == 5
    assert len(doc["result"]["generators"]) == doc["dimensions"]["generators"]


def test_semialgebra_case():
    r = run("semialgebra", "--case", "ii")
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["result"]["verdict"] == "not_semialgebra"
    assert doc["result"]["commutator"]["re"] == [[-2, 1, 0], [-1, 2, 0], [0, 0, 0]]


def test_reachable_summary():
    r = run("reachable", "--system", system("qubit_phase_flip.sys"), "--switches", "2", "--count", "30")
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["result"]["summary"]["all_cp"] is True
    assert doc["result"]["contraction"]["holds"] is True
    assert len(doc["result"]["schedules"]) == 30


def test_non_convergence_exits_one():
    r = run("wedge", "--system", system("example1.sys"), "--rounds", "1")
    assert r.returncode == 1
    assert json.loads(r.stdout)["result"]["saturation"]["converged"] is False


@pytest.mark.parametrize(
    "args",
    [
        [],
        ["bogus"],
        ["example", "4"],
        ["figdata", "5"],
        ["channel", "nonsense"],
        ["conditions", "--system", "/nonexistent.sys"],
        ["reachable", "--system", "x.sys"],
    ],
)
def test_usage_errors_exit_two(args):
    assert run(*args).returncode == 2


def test_parse_error_names_line(tmp_path):
    bad = tmp_path / "bad.sys"
    bad.write_text("rep qubit\n# comment\ncontrol [1 0; 0]\n")
    r = run("conditions", "--system", str(bad))
    assert r.returncode == 2
    assert "line 3 [control]" in r.stderr
