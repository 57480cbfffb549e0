import json
import os
import subprocess
import sys

import pytest

from markoff_arith.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


def run_proc(*argv, workers=None):
    env = dict(os.environ)
    if workers is not None:
        env["MARKOFF_ARITH_WORKERS"] = str(workers)
    proc = subprocess.run([sys.executable, "-m", "markoff_arith", *argv],
                          capture_output=True, env=env, check=False)
    return proc.returncode, proc.stdout


def test_tree_length(capsys):
    code, doc = run(capsys, "tree", "length", "--p", "2", "--matrix", "[[2,0],[0,1/2]]")
    assert code == 0 and doc["result"]["length"] == 2


def test_solve_fiber(capsys):
    code, doc = run(capsys, "solve", "--surface", "torus:-2", "--constraint", "x=-3", "--H", "100")
    assert code == 0
    sol = doc["result"]["solution"]
    assert sol["classification"]["t"] == 3 and sol["certified"]
    assert [3, 3, 3] in [g["trace_rep"] for g in sol["orbit_generators"]]
    assert [3, 3, 3] in sol["trace_points"]
    assert doc["config"]["H"] == 100


def test_enumerate(capsys):
    code, doc = run(capsys, "enumerate", "--surface", "torus:-2", "--H", "200")
    assert code == 0
    assert [p["point"] if isinstance(p, dict) else p for p in doc["result"]["minimal_points"]] == [[-3, 3, 3], [0, 0, 0]]


def test_surface_reports_both_charts(capsys):
    code, doc = run(capsys, "surface", "torus", "-2")
    assert doc["result"]["equation"] == "x^2+y^2+z^2+xyz = 0"
    assert doc["result"]["trace_chart"]["equation"] == "x^2+y^2+z^2-xyz = 0"


@pytest.mark.parametrize("argv", [
    ["descend", "--surface", "torus:-2", "--point=-15,6,3"],
    ["orbit", "--surface", "torus:-2", "--p=-3,3,3", "--q=-15,6,3"],
    ["fiber", "classify", "--surface", "torus:-2", "--axis", "x", "--t", "3"],
    ["fiber", "conic", "--surface", "torus:-2", "--axis", "x", "--t", "3"],
    ["fiber", "points", "--surface", "torus:-2", "--axis", "x", "--t", "3", "--H", "50"],
    ["fiber", "parabolic-param", "--surface", "torus:2", "--axis", "x", "--t", "2"],
    ["curve", "classify", "--surface", "sphere:0,0,0,0", "--constraint", "x+y"],
    ["slope", "trace", "--slope", "2/3", "--triple", "3,3,3"],
    ["slope", "poly", "--slope", "1/2"],
    ["systole", "--place", "2", "--matrices", "[[2,0],[0,1/2]]", "[[1,1],[0,1]]"],
    ["torus-lattice", "classify", "--f", "X - Y", "--x", "4", "--y", "8", "--M", "20"],
    ["torus-lattice", "solve", "--f", "X + Y - 3", "--x", "2", "--y", "5", "--M", "20"],
    ["selftest", "--rounds", "20"],
])
def test_commands_exit_zero(capsys, argv):
    code, doc = run(capsys, *argv)
    assert code == 0, doc
    assert doc["command"] == argv[0] and "result" in doc


def test_precondition_exit_2(capsys):
    code, doc = run(capsys, "descend", "--surface", "torus:-2", "--point=1,2,3")
    assert code == 2 and doc["error"]["kind"] == "precondition"
    code, doc = run(capsys, "surface", "torus", "banana")
    assert code == 2 and doc["error"]["kind"] == "input"
    code, doc = run(capsys, "enumerate", "--surface", "torus:-2", "--H", "0")
    assert code == 2
    code, doc = run(capsys, "torus-lattice", "classify", "--f", "X - Y", "--x", "1", "--y", "2")
    assert code == 2


def test_bound_exceeded_exit_3(capsys):
    code, doc = run(capsys, "systole", "--place", "2", "--slope-bound", "1",
                    "--triple", "5/2,-9/4,3/2")
    assert code == 3 and doc["error"]["best"] is not None and doc["error"]["kind"] == "bound-exceeded"


def test_selftest_reports_status(capsys):
    code, doc = run(capsys, "selftest", "--rounds", "10", "--seed", "7")
    assert code == 0 and doc["result"]["passed"] and doc["result"]["seed"] == 7


def test_output_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["slope", "poly", "--slope", "1/1", "--output", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["result"]


def test_byte_identical_across_workers():
    argv = ["enumerate", "--surface", "sphere:1,1,1,1", "--H", "60"]
    outs = {run_proc(*argv, workers=w) for w in (1, 3)}
    outs.add(run_proc(*argv, "--workers", "2"))
    assert len(outs) == 1 and next(iter(outs))[0] == 0


def test_module_entry_point():
    code, out = run_proc("tree", "length", "--p", "2", "--matrix", "[[2,0],[0,1/2]]")
    assert code == 0 and json.loads(out)["result"]["length"] == 2
