import json
import os
import subprocess

import pytest

CLI = os.environ.get("MVTOP_CLI")
pytestmark = pytest.mark.skipif(not CLI, reason="MVTOP_CLI not set")


def run(*args, env=None):
    p = subprocess.run([CLI, *args], capture_output=True, text=True, env=env)
    return p.returncode, p.stdout


def test_check_continuity_holds():
    code, out = run("check", "continuity", "antipodal@circle4")
    assert code == 0
    assert json.loads(out)["command"] == "check continuity"


def test_check_connected_fails():
    code, _ = run("check", "connected", "discrete:2")
    assert code == 1


def test_check_space_reports_transitivity(tmp_path):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"points": ["0", "1", "2"],
                             "min_open": {"0": ["0", "1"], "1": ["1", "2"], "2": ["2"]}}))
    code, out = run("check", "space", str(f))
    assert code == 2
    assert json.loads(out)["error"]["kind"] == "NotTransitive"


def test_malformed_json_has_a_location(tmp_path):
    f = tmp_path / "broken.json"
    f.write_text('{"points": [\n')
    code, out = run("check", "space", str(f))
    assert code == 2
    assert "broken.json:" in json.loads(out)["error"]["detail"]


def test_homotopy_commands(tmp_path):
    cert = tmp_path / "cert.json"
    code, out = run("homotopy", "--contractible", "sierpinski", "--emit-certificate", str(cert))
    assert code == 0
    assert json.loads(out)["result"]["status"] == "Homotopic"
    emitted = json.loads(cert.read_text())
    assert len(emitted["chain"]) == 2 and emitted["fence_length"] == 1
    d2 = {"dom": "discrete:2", "cod": "discrete:2"}
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    a.write_text(json.dumps({**d2, "values": {"0": ["0"], "1": ["0"]}}))
    b.write_text(json.dumps({**d2, "values": {"0": ["1"], "1": ["1"]}}))
    code, out = run("homotopy", "--f", str(a), "--g", str(b))
    assert code == 1
    assert json.loads(out)["result"]["status"] == "NotHomotopic"


def test_invariant_commands():
    code, out = run("invariant", "tmc", "--space", "circle4")
    r = json.loads(out)["result"]
    assert code == 0 and r["decided"] and r["upper"] == 4
    code, out = run("invariant", "catm", "--space", "sierpinski")
    assert code == 0 and json.loads(out)["result"]["upper"] == 1
    code, out = run("invariant", "dm", "--f", "identity@circle4", "--g", "identity@circle4")
    assert code == 0 and json.loads(out)["result"]["upper"] == 1
    code, out = run("invariant", "tmc", "--space", "discrete:2")
    assert code == 2 and json.loads(out)["error"]["kind"] == "NotPathConnected"


def test_budget_exhaustion_is_exit_3():
    code, out = run("invariant", "tmc", "--space", "circle4", "--budget", "1")
    assert code == 3
    assert json.loads(out)["result"]["decided"] is False


def test_env_budget():
    env = dict(os.environ, MVTOP_BUDGET="1")
    code, _ = run("invariant", "tmc", "--space", "circle4", env=env)
    assert code == 3


def test_reports_are_byte_identical():
    outs = {run("invariant", "tmc", "--space", "circle4", "--threads", "3")[1] for _ in range(3)}
    assert len(outs) == 1


def test_models_emit_round_trips(tmp_path):
    code, out = run("models", "emit", "sphere6")
    assert code == 0
    f = tmp_path / "s6.json"
    f.write_text(out)
    code, out2 = run("models", "emit", str(f))
    assert code == 0 and json.loads(out2) == json.loads(out)
    code, _ = run("models", "list")
    assert code == 0


def test_fibration_commands():
    code, out = run("fibration", "certificate", "--map", "identity@circle4")
    assert code == 0
    assert json.loads(out)["result"]["certificate"] == "Homeomorphism"
    code, out = run("fibration", "check", "--map", "identity@circle4", "--generate", "5", "--seed", "2")
    assert code == 0
