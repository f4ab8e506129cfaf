import json
import os
import pathlib
import subprocess

import jsonschema
import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]
CLI = os.environ.get("ULTRAKIT_CLI")

pytestmark = pytest.mark.skipif(not CLI, reason="ULTRAKIT_CLI not set")


def load(name):
    return json.loads((ROOT / "schemas" / name).read_text())


def run(tmp_path, *args, config=None):
    cmd = [CLI, *args, "--out-dir", str(tmp_path)]
    if config is not None:
        path = tmp_path / "config.json"
        jsonschema.validate(config, load("config.schema.json"))
        path.write_text(json.dumps(config))
        cmd += ["--config", str(path)]
    proc = subprocess.run(cmd, capture_output=True, text=True)
    report = tmp_path / "report.json"
    return proc.returncode, json.loads(report.read_text()) if report.exists() else None


@pytest.mark.parametrize(
    "args",
    [
        ["weights", "--sequence", "gevrey:2", "--order", "32"],
        ["algebra-selfcheck", "--trials", "5"],
        ["norms", "--fixture", "hermite", "--alpha-max", "6"],
        ["riemann", "--fixture", "gauss", "--schedule", '[{"m": 3, "n": 8, "gamma": 0.01}]', "--alpha-max", "2"],
    ],
)
def test_reports_match_schema(tmp_path, args):
    rc, report = run(tmp_path, *args)
    assert rc == 0
    jsonschema.validate(report, load("report.schema.json"))
    assert report["config_echo"]["seed"] == 7
    assert all(v == 0.0 for v in report["timings"].values())


def test_config_file_drives_the_run(tmp_path):
    config = {
        "subcommand": "norms",
        "seed": 11,
        "fixtures": [{"name": "bump", "terms": ["a=1.5 b=0 c=0 coeffs=[1]"]}],
        "ell": [0.5, 1.0],
        "q": [1.0],
        "alpha_max": 4,
    }
    rc, report = run(tmp_path, "norms", config=config)
    assert rc == 0
    assert report["config_echo"]["seed"] == 11
    assert len(report["results"]["rows"]) == 2
    header = (tmp_path / "norms.csv").read_text().splitlines()[0]
    assert header == "alpha,x_or_xi,raw,weighted"


def test_forged_estimate_names_its_anchor(tmp_path):
    rc, report = run(tmp_path, "norms", "--fixture", "gauss", "--rhs-scale", "1e-3", "--alpha-max", "4")
    assert rc == 1
    assert report["violations"]
    assert all(v["paper_ref"] for v in report["violations"])


def test_empty_fixture_list_is_a_config_error(tmp_path):
    rc, _ = run(tmp_path, "norms", config={"fixtures": [{"terms": ["a=1 b=0 c=0 coeffs=[1]"]}]})
    assert rc == 0
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"fixtures": []}))
    assert subprocess.run([CLI, "norms", "--config", str(path), "--out-dir", str(tmp_path)]).returncode == 2
