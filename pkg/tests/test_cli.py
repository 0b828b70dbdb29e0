"""End-to-end checks of the command line surface.

Commands run through main() with argv lists; one test goes through a real
subprocess to confirm the module entry point. Expected parameter values
repeat oracle results frozen in the model and metrics test files.
"""

import json
import subprocess
import sys

import pytest

from qwr.cli import main
from qwr.io import read_code, write_code
from qwr.model import CssCode, validate


def run(args):
    return main([str(a) for a in args])


def load(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


@pytest.fixture()
def toric3(tmp_path):
    path = tmp_path / "toric3.json"
    assert run(["gen-fixture", "toric", "--size", 3, "--out", path]) == 0
    return path


@pytest.fixture()
def fig1(tmp_path):
    path = tmp_path / "fig1.json"
    assert run(["gen-fixture", "fig1", "--size", 6, "--out", path]) == 0
    return path


def test_validate_reports_toric_params(toric3, tmp_path):
    out = tmp_path / "v.json"
    assert run(["validate", toric3, "--out", out]) == 0
    doc = load(out)
    assert doc["valid"] is True
    assert doc["reasonable"] is True
    assert doc["witness"] is None
    assert doc["params"]["n"] == 18
    assert doc["params"]["k"] == 2
    assert doc["params"]["w_x"] == 4
    assert doc["params"]["q_x"] == 2
    assert doc["tool"]["name"] == "qwr"


def test_params_to_stdout(toric3, capsys):
    assert run(["params", toric3]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["params"]["num_x_stabs"] == 9
    assert doc["params"]["num_z_stabs"] == 9


def test_distance_exact(toric3, tmp_path):
    out = tmp_path / "d.json"
    assert run(["distance", toric3, "--side", "z", "--method", "exact",
                "--out", out]) == 0
    doc = load(out)["distance"]
    assert doc["value"] == 3
    assert doc["method"] == "exact"
    assert len(doc["witness"]) == 3


def test_distance_estimate_deterministic(toric3, capsys):
    argv = ["distance", toric3, "--method", "estimate", "--trials", 4,
            "--seed", 7]
    assert run(argv) == 0
    first = capsys.readouterr().out
    assert run(argv) == 0
    assert capsys.readouterr().out == first


def test_copy_gauge(toric3, tmp_path):
    out = tmp_path / "cg.json"
    rep = tmp_path / "cg_report.json"
    assert run(["copy-gauge", toric3, out, "--report", rep]) == 0
    params = validate(read_code(str(out)))
    assert params.k == 2
    assert params.w_x <= 3 and params.q_x <= 3
    reports = load(rep)["reports"]
    assert len(reports) == 1
    assert reports[0]["params_after"]["n"] == params.n


def test_thicken_uniform(toric3, tmp_path):
    out = tmp_path / "th.json"
    assert run(["thicken", toric3, out, "--ell", 2,
                "--strategy", "uniform"]) == 0
    params = validate(read_code(str(out)))
    assert params.n == 2 * 18 + 9
    assert params.k == 2


def test_thicken_coloring_ignores_ell(toric3, tmp_path):
    out = tmp_path / "th.json"
    assert run(["thicken", toric3, out, "--strategy", "coloring"]) == 0
    code = read_code(str(out))
    assert code.meta["ell"] == 9  # q_Z * w_Z + 1 for the toric layout
    assert validate(code).k == 2


def test_cone_with_explicit_direct_rows(fig1, tmp_path):
    out = tmp_path / "cone.json"
    rep = tmp_path / "cone_report.json"
    direct = ",".join(str(i) for i in range(7))  # all but the big face
    assert run(["cone", fig1, out, "--direct-z", direct,
                "--report", rep]) == 0
    params = validate(read_code(str(out)))
    assert params.k == 2
    assert params.w_z <= 5
    steps = [r["step"] for r in load(rep)["reports"]]
    assert steps == ["cone", "reduce-cone"]


def test_cone_sets_from_file(fig1, tmp_path):
    sets_path = tmp_path / "sets.json"
    code = read_code(str(fig1))
    big = code.meta["big_face_row"]
    with open(sets_path, "w", encoding="utf-8") as fh:
        json.dump([list(code.z_stabs.row_supports[big])], fh)
    direct = ",".join(str(i) for i in range(code.num_z_stabs) if i != big)
    out = tmp_path / "cone.json"
    assert run(["cone", fig1, out, "--sets", sets_path,
                "--direct-z", direct]) == 0
    assert validate(read_code(str(out))).k == 2


def test_connect_writes_plan(tmp_path):
    src = tmp_path / "pair.json"
    write_code(str(src), CssCode.from_support_lists(2, [], [[0, 1]]))
    out = tmp_path / "joined.json"
    plan_path = tmp_path / "plan.json"
    assert run(["connect", src, out, "--plan", plan_path]) == 0
    params = validate(read_code(str(out)))
    assert params.n == 3 and params.k == 1
    plan = load(plan_path)["plan"]
    assert plan["entries"] == [
        {"z_row": 0, "triples": [[0, 1, 2]]}
    ]


def test_improve_soundness_noop(toric3, tmp_path):
    out = tmp_path / "sound.json"
    assert run(["improve-soundness", toric3, "--target-h", 1.0,
                "--out", out]) == 0
    doc = load(out)
    assert len(doc["graphs"]) == 9
    assert all(len(g["edges"]) == 4 for g in doc["graphs"])
    assert doc["report"]["notes"]["sets"][0]["added_edges"] == 0


def test_reduce_full(fig1, tmp_path):
    out = tmp_path / "red.json"
    rep = tmp_path / "red_report.json"
    assert run(["reduce", fig1, out, "--report", rep]) == 0
    params = validate(read_code(str(out)))
    assert params.k == 2
    assert params.w_x <= 5 and params.w_z <= 5
    steps = [r["step"] for r in load(rep)["reports"]]
    assert steps[-1] == "summary"


def test_random_byte_identical(tmp_path):
    outs = []
    for tag in ("a", "b"):
        out = tmp_path / f"rand_{tag}.json"
        diag = tmp_path / f"diag_{tag}.json"
        assert run(["random", "--n", 16, "--beta", 2, "--seed", 5,
                    "--out", out, "--diagnostics", diag]) == 0
        outs.append((out.read_bytes(), diag.read_bytes()))
    assert outs[0] == outs[1]


def test_reduce_applic_small(tmp_path):
    cfg = tmp_path / "cfg.json"
    with open(cfg, "w", encoding="utf-8") as fh:
        json.dump({
            "distance_trials": 2,
            "max_balance_ell": 2,
            "balance": "skip",
            "reduce": {
                "steps": {"thicken": "skip"},
                "cone": {"sets": "heaviest", "ell_prime": 1},
            },
        }, fh)
    out = tmp_path / "ra.json"
    rep = tmp_path / "ra_report.json"
    assert run(["reduce-applic", "--n", 32, "--beta", 2, "--z-count", 4,
                "--ell", 2, "--seed", 0, "--config", cfg,
                "--out", out, "--report", rep]) == 0
    assert validate(read_code(str(out))).k > 0
    steps = [r["step"] for r in load(rep)["reports"]]
    assert steps[0] == "random-applic"
    assert steps[-1] == "applic-summary"


def test_domain_error_exits_one(toric3, capsys):
    assert run(["distance", toric3, "--method", "exact", "--budget", 1]) == 1
    err = json.loads(capsys.readouterr().err)
    assert err["error"]["code"] == "budget-exceeded"


def test_missing_file_exits_one(capsys):
    assert run(["validate", "/no/such/file.json"]) == 1
    err = json.loads(capsys.readouterr().err)
    assert err["error"]["code"] == "io-error"


def test_usage_error_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["distance"])
    assert exc.value.code == 2


def test_module_entry_point(tmp_path):
    out = tmp_path / "steane.json"
    proc = subprocess.run(
        [sys.executable, "-m", "qwr.cli", "gen-fixture", "steane",
         "--out", str(out)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert validate(read_code(str(out))).k == 1
