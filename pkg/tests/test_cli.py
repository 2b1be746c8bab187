import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from tropmat.cli import EXIT_FAILURE, EXIT_INVALID, EXIT_OK, run

INPUTS = Path(__file__).resolve().parent.parent / "inputs"


def inp(name):
    return str(INPUTS / name)


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bergman_u23(capsys):
    code, out, _ = call(capsys, "bergman", "--matroid", inp("u23.json"))
    assert code == EXIT_OK
    data = json.loads(out)
    assert sorted(data["rays"]) == [[-1, -1], [0, 1], [1, 0]]


def test_chow_b3(capsys):
    code, out, _ = call(capsys, "chow", "--matroid", inp("b3.json"))
    assert code == EXIT_OK and json.loads(out)["dims"] == [1, 4, 1]
    code, out, _ = call(capsys, "chow", "--matroid", inp("b3.json"), "--format", "table")
    assert out.split() == ["A^0", "1", "A^1", "4", "A^2", "1"]


def test_chow_degree(capsys):
    code, out, _ = call(capsys, "chow-degree", "--matroid", inp("b3.json"),
                        "--chow-class", inp("b3_x0_squared.json"))
    assert code == EXIT_OK and json.loads(out) == {"degree": "-1", "grade": 2}


def test_curve_lattice(capsys):
    _, out, _ = call(capsys, "curve-lattice", "--matroid", inp("b3.json"))
    assert json.loads(out)["rank"] == 4
    _, out, _ = call(capsys, "curve-lattice", "--matroid", inp("u23.json"))
    assert json.loads(out)["rank"] == 1


def test_trop_moduli(capsys):
    code, out, _ = call(capsys, "trop-moduli", "--matroid", inp("u23.json"), "--gamma", inp("paired_legs.json"))
    data = json.loads(out)
    assert code == EXIT_OK and data["dim"] == 3
    assert {c["dim"] for c in data["cones"] if c["maximal"]} == {2, 3}


def test_balance_and_intersect(capsys):
    _, out, _ = call(capsys, "balance-check", "--cycle", inp("line_cycle.json"))
    assert json.loads(out)["balanced"] is True
    _, out, _ = call(capsys, "intersect", "--cycle", inp("line_cycle.json"),
                     "--cycle", inp("line_cycle.json"), "--seed", "4")
    assert json.loads(out)["degree"] == "1"


def test_unbalanced_cycle_reports_defect(capsys, tmp_path):
    data = json.loads((INPUTS / "line_cycle.json").read_text())
    data["cones"][0]["weight"] = "2"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    code, out, _ = call(capsys, "balance-check", "--cycle", str(path))
    report = json.loads(out)
    assert code == EXIT_OK and report["balanced"] is False
    assert report["defects"][0]["defect"] == ["-1", "-1"]


def test_virtual_weight_paired_legs(capsys):
    code, out, _ = call(capsys, "virtual-weight", "--matroid", inp("u23.json"),
                        "--gamma", inp("paired_legs.json"), "--c1beta", "2")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["dim"] == 2 and data["solution_dim"] == 1 and data["balanced"] is True
    assert {c["weight"] for c in data["cycle"]["cones"]} == {"1"}


def test_reconstruct_lines(capsys):
    for seed in ("0", "9"):
        code, out, _ = call(capsys, "reconstruct", "--matroid", inp("b3.json"), "--gamma", inp("lines.json"),
                            "--c1beta", "0", "--constraints", inp("two_points.json"), "--seed", seed)
        assert code == EXIT_OK and json.loads(out)["count"] == "1"


def test_exit_codes(capsys, tmp_path):
    code, _, err = call(capsys, "virtual-weight", "--matroid", inp("u23.json"),
                        "--gamma", inp("paired_legs.json"), "--c1beta", "1")
    assert code == EXIT_FAILURE and json.loads(err)["error"] == "EmptySolution"
    code, _, err = call(capsys, "bergman", "--matroid", str(tmp_path / "missing.json"))
    assert code == EXIT_INVALID and json.loads(err)["kind"] == "invalid input"
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 3, "type": "bases", "data": [[0, 1], [2, 3]]}')
    assert call(capsys, "bergman", "--matroid", str(bad))[0] == EXIT_INVALID
    bad.write_text("{not json")
    assert call(capsys, "chow", "--matroid", str(bad))[0] == EXIT_INVALID
    assert call(capsys, "chow")[0] == EXIT_INVALID
    assert call(capsys, "trop-moduli", "--matroid", inp("u34.json"), "--gamma", inp("ray_legs.json"))[0] \
        == EXIT_INVALID
    with pytest.raises(SystemExit) as exc:
        run(["bergman", "--bogus"])
    assert exc.value.code == 2


def test_out_file(capsys, tmp_path):
    target = tmp_path / "fan.json"
    code, out, _ = call(capsys, "bergman", "--matroid", inp("k4.json"), "--out", str(target))
    assert code == EXIT_OK and out == ""
    # 6 edges, 4 triangles and 3 perfect matchings
    assert len(json.loads(target.read_text())["rays"]) == 13


def test_byte_identical_runs(tmp_path):
    argv = [sys.executable, "-m", "tropmat", "virtual-weight", "--matroid", inp("u23.json"),
            "--gamma", inp("paired_legs.json"), "--c1beta", "2"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    env = dict(os.environ, TROPMAT_THREADS="2")
    second = subprocess.run(argv, capture_output=True, check=True, env=env).stdout
    assert first == second and first
