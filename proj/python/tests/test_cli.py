import json
import os
import subprocess

import pytest

CLI = os.environ.get("HPACK_CLI")
pytestmark = pytest.mark.skipif(not CLI, reason="HPACK_CLI not set")


def run(*args):
    out = subprocess.run([CLI, *map(str, args)], capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def test_construct_invariants_pack(tmp_path):
    pattern, host = tmp_path / "h.txt", tmp_path / "g.txt"
    run("construct", "krminus", "--r", 4, "--out", pattern)
    inv = run("invariants", pattern)
    assert inv["chi_cr"] == "8/3" and inv["threshold_coefficient"] == "5/8"
    made = run("construct", "prop3", "--r", 4, "--k", 3, "--out", host)
    assert made["min_degree"] == 7
    assert run("pack", "--pattern", pattern, "--host", host)["decision"] == "absent"
    assert run("pack", "--pattern", pattern, "--host", host, "--max")["size"] == 2


def test_pipeline_and_trace(tmp_path):
    host, trace = tmp_path / "g.txt", tmp_path / "trace.json"
    made = run("construct", "canonical", "--r", 4, "--q", 1, "--n", 16, "--out", host)
    res = run("pipeline", "--host", host, "--r", 4, "--trace", trace)
    assert res["decision"] == "found" and res["path"] == "pipeline"
    assert len(res["packing"]) == 4
    assert json.loads(trace.read_text())["tidy"]["n_star"] == 16

    sparse = tmp_path / "sparse.json"
    sparse.write_text(json.dumps({"classes": made["classes"][:1]}))
    tidied = run("tidy", "--host", host, "--sparse", sparse, "--r", 4, "--tau", "1/100")
    assert tidied["removed"] == []


def test_hallpack_and_table(tmp_path):
    host, classes = tmp_path / "g.txt", tmp_path / "c.json"
    made = run("construct", "hqr", "--q", 2, "--r", 3, "--out", host)
    classes.write_text(json.dumps({"classes": made["classes"]}))
    assert run("hallpack", "--host", host, "--classes", classes, "--q", 2, "--r", 3)["decision"] == "found"
    table = run("threshold-table", "--r", 5, "--n-max", 15)
    assert [row["min_degree"] for row in table["rows"]] == [4, 8, 11]


def test_errors_exit_nonzero(tmp_path):
    out = subprocess.run([CLI, "construct", "canonical", "--r", "4", "--q", "1", "--n", "12"], capture_output=True, text=True)
    assert out.returncode == 2
    assert json.loads(out.stderr)["error"] == "BadParameter"
