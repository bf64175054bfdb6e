from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from curvecomplex.cli import config_from_args, main, run
from curvecomplex.config import ConfigError, ExperimentConfig


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    try:
        cfg = config_from_args(list(argv))
    except Exception:
        return main(list(argv)), "", ""
    code = run(cfg, out, err)
    return code, out.getvalue(), err.getvalue()


def test_farey_distance():
    code, out, _ = call("distance", "--surface", "1,1", "--from", "0/1", "--to", "1/0")
    assert code == 0
    rep = json.loads(out)
    assert rep["metrics"]["distance"] == 1 and rep["verdict"] == "pass"


def test_distance_on_sphere():
    code, out, _ = call("distance", "--surface", "0,5", "--a", "ab", "--b", "cd", "--W", "12")
    assert code == 0 and json.loads(out)["metrics"]["distance"] == 1


@pytest.mark.parametrize(
    "argv",
    [
        ("distance", "--surface", "0,5", "--a", "ab"),
        ("distance", "--surface", "0,5", "--a", "zz", "--b", "ab", "--W", "10"),
        ("ball", "--surface", "0,5", "--z", "ab", "--r", "-1", "--W", "10"),
        ("lipschitz", "--surface", "0,5"),
        ("nonsense",),
        ("dz", "--surface", "0,5", "--a", "ab", "--b", "bc", "--z", "A(ab)", "--W", "0"),
        ("dz", "--surface", "0,5", "--a", "bc", "--b", "ab", "--z", "Y(de)"),
        ("distance", "--surface", "0,5", "--a", "ab", "--b", "a1", "--W", "10"),
    ],
)
def test_usage_errors_exit_3(argv):
    assert main(list(argv)) == 3


def test_missing_seed_in_sample_mode():
    with pytest.raises(ConfigError):
        ExperimentConfig("bgi").validate()
    ExperimentConfig("bgi", a="ab", b="cd").validate()


def test_config_round_trip_and_override(tmp_path):
    cfg = ExperimentConfig("ball", W=14, r=2, z="ab")
    assert ExperimentConfig.from_json(json.loads(cfg.dumps())) == cfg
    p = tmp_path / "c.json"
    p.write_text(cfg.dumps())
    code, out, _ = call("ball", "--config", str(p), "--r", "1")
    assert code == 0
    assert json.loads(out)["parameters"]["r"] == 1


def test_config_rejects_unknown_keys(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"check": "ball", "radius": 2}))
    assert main(["ball", "--config", str(p)]) == 3


def test_output_file_and_histogram(tmp_path):
    target = tmp_path / "ball.json"
    code, out, _ = call("ball", "--z", "ab", "--r", "2", "--W", "14", "-o", str(target))
    assert code == 0 and "pass" in out
    assert json.loads(target.read_text())["metrics"]["layer_sizes"][0] == 1
    assert (tmp_path / "ball_layers.csv").read_text().startswith("value,count")


def test_reruns_are_byte_identical(tmp_path):
    texts = []
    for k in range(2):
        target = tmp_path / f"run{k}.json"
        code, _, _ = call("lipschitz", "--seed", "3", "--trials", "4", "--W", "16", "--W-sub", "10", "-o", str(target))
        assert code == 0
        texts.append(target.read_bytes())
    assert texts[0] == texts[1]


def test_module_entry_point():
    r = subprocess.run(
        [sys.executable, "-m", "curvecomplex", "distance", "--surface", "1,1", "--a", "0/1", "--b", "2/5"],
        capture_output=True, text=True,
    )
    assert r.returncode == 0 and json.loads(r.stdout)["metrics"]["distance"] == 2
