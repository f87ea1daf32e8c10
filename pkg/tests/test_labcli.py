from __future__ import annotations

import csv
import json
import shutil
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pflab.errors import ConfigError
from pflab.labcli import KINDS, RunConfig, main, run, validate

SMALL = {
    "zeros": {"map": {"family": "logistic", "lambda": 1}, "n": 24},
    "density": {"map": {"family": "logistic", "lambda": 2}, "grid": {"start": 0.001, "stop": 1.2, "num": 400}},
    "iterate": {"map": {"family": "logistic", "lambda": 4}, "x0": 5.6, "n_burn": 10, "n_keep": 50},
    "compare": {"map": {"family": "logistic", "lambda": 4}, "x0": 5.6, "n_burn": 100,
                "n_keep": 20000, "grid_num": 4000},
    "lorenz": {"n_directions": 10, "n_steps": 200},
    "rossler": {},
    "hamiltonian": {"periods": 1, "h": 0.01},
    "nbody": {"c": [1, 2]},
    "trinomial": {"alpha_re": -0.5, "alpha_im": 0.2, "theta_num": 50},
    "boundary": {"nx": 12, "ny": 10},
    "fredholm": {"A": [[-1, 0], [0, -2]], "point": [1.0, 2.0], "t": [0.1, 0.5, 1.0]},
}


def _write(tmp_path, d, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(d))
    return p


def _read(path):
    with open(path) as fh:
        return list(csv.reader(fh))


@pytest.mark.parametrize("kind", KINDS)
def test_every_kind_runs(kind, tmp_path):
    cfg = RunConfig(kind=kind, params=SMALL[kind])
    assert validate(cfg) == [] or kind == "zeros"
    man = run(cfg, tmp_path / "out")
    assert man.verify(tmp_path / "out")
    names = {f["name"] for f in man.files}
    assert "summary.json" in names
    for f in names - {"summary.json"}:
        rows = _read(tmp_path / "out" / f)
        assert len(rows) >= 1 and all(len(r) == len(rows[0]) for r in rows)


def test_zeros_file_contract(tmp_path):
    run(RunConfig("zeros", {"map": {"family": "logistic", "lambda": 1}, "n": 64}), tmp_path / "o")
    z = _read(tmp_path / "o" / "zeros.csv")
    assert z[0] == ["y", "s", "multiplicity"]
    assert _read(tmp_path / "o" / "phases.csv")[0] == ["s", "chi"]
    assert sum(int(r[2]) for r in z[1:]) == 64


def test_compare_summary_has_ks(tmp_path):
    run(RunConfig("compare", SMALL["compare"]), tmp_path / "o")
    s = json.loads((tmp_path / "o" / "summary.json").read_text())
    assert 0 <= s["ks_distance"] <= 0.05


def test_nbody_spectrum_values(tmp_path):
    run(RunConfig("nbody", {"c": [1, 2]}), tmp_path / "o")
    rows = _read(tmp_path / "o" / "spectrum.csv")
    assert rows[0] == ["re", "im", "class"]
    vals = [round(float(r[0]), 4) for r in rows[1:]]
    assert vals == [0.0, 1.2679, 4.7321]


def test_csv_precision(tmp_path):
    run(RunConfig("nbody", {"c": [1, 2]}), tmp_path / "o")
    v = float(_read(tmp_path / "o" / "spectrum.csv")[2][0])
    assert v == 3 - np.sqrt(3) or abs(v - (3 - np.sqrt(3))) < 1e-15


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(KINDS), st.integers(0, 2 ** 63), st.integers(1, 8))
def test_config_round_trip(kind, seed, threads):
    cfg = RunConfig(kind=kind, params=SMALL[kind], seed=seed, threads=threads,
                    out="somewhere", tolerances={"band": 1e-5})
    assert RunConfig.from_json(cfg.to_json()) == cfg


@pytest.mark.parametrize("kind", ["zeros", "compare", "lorenz", "boundary", "nbody"])
def test_determinism(kind, tmp_path):
    params = dict(SMALL[kind])
    if kind == "nbody":
        params = {"sampler": {"n": 4, "low": 0.5, "high": 5, "trials": 3}}
    a = run(RunConfig(kind, params, seed=11, threads=2), tmp_path / "a")
    b = run(RunConfig(kind, params, seed=11, threads=1), tmp_path / "b")
    data = lambda m: {f["name"]: f["sha256"] for f in m.files}
    assert data(a) == data(b)


def test_output_dir_must_be_fresh(tmp_path):
    run(RunConfig("nbody", {"c": [1]}), tmp_path / "o")
    with pytest.raises(ConfigError):
        run(RunConfig("nbody", {"c": [1]}), tmp_path / "o")


@pytest.mark.parametrize("bad", [
    {"kind": "nope"},
    {"kind": "zeros", "params": {"map": {"family": "logistic", "lambda": 1}, "bogus": 1}},
    {"kind": "zeros", "params": {}},
    {"kind": "zeros", "params": {"map": {"family": "weird"}}},
    {"kind": "zeros", "params": {"map": {"family": "logistic", "lambda": 1}, "n": 500}},
    {"kind": "density", "params": {"map": {"family": "logistic", "lambda": 1}, "grid": {"start": 2, "stop": 1}}},
    {"kind": "hamiltonian", "params": {"m": -1}},
    {"kind": "nbody", "params": {}},
    {"kind": "lorenz", "extra": 1},
    {"kind": "lorenz", "threads": 0},
    {"kind": "trinomial", "params": {"alpha_re": "x"}},
])
def test_validate_errors(bad):
    msgs = validate(bad)
    assert len(msgs) == 1 and msgs[0].startswith("error: ConfigError")


def test_validate_examples():
    assert any("fewer than three fixed points" in m
               for m in validate({"kind": "lorenz", "params": {"rho": 0.5}}))
    msgs = validate({"kind": "zeros", "params": {"map": {"family": "logistic", "lambda": 1}, "pf": True}})
    assert msgs == ["error: Resonance: lambda^1 = 1"]
    assert validate({"kind": "zeros", "params": {"map": {"family": "logistic", "lambda": 2}}}) == []
    assert any("alpha = 1" in m for m in validate({"kind": "trinomial", "params": {"alpha_re": 1}}))


def test_main_exit_codes(tmp_path, capsys):
    good = _write(tmp_path, {"kind": "nbody", "params": {"c": [1, 2]}})
    assert main(["nbody", "--config", str(good), "--out", str(tmp_path / "o")]) == 0
    assert main(["validate", "--config", str(good)]) == 0
    bad = _write(tmp_path, {"kind": "nbody", "params": {"x": 1}}, "bad.json")
    assert main(["nbody", "--config", str(bad), "--out", str(tmp_path / "p")]) == 2
    assert main(["validate", "--config", str(bad)]) == 2
    assert main(["lorenz", "--config", str(good), "--out", str(tmp_path / "q")]) == 2
    res = _write(tmp_path, {"kind": "zeros", "params": {"map": {"family": "logistic", "lambda": 1},
                                                        "n": 8, "pf": True}}, "res.json")
    assert main(["zeros", "--config", str(res), "--out", str(tmp_path / "r")]) == 3
    err = capsys.readouterr().err
    assert "Resonance" in err and "ConfigError" in err
    assert not any((tmp_path / "r").iterdir())
    assert main(["nbody", "--config", str(tmp_path / "missing.json")]) == 2


def test_main_overrides(tmp_path):
    cfg = _write(tmp_path, {"kind": "nbody", "params": {"sampler": {"n": 3, "low": 1, "high": 2}}})
    main(["nbody", "--config", str(cfg), "--out", str(tmp_path / "a"), "--seed", "5", "--threads", "2"])
    man = json.loads((tmp_path / "a" / "manifest.json").read_text())
    assert man["config"]["seed"] == 5 and man["config"]["threads"] == 2


@pytest.mark.skipif(shutil.which("lab") is None, reason="console script not installed")
def test_console_script(tmp_path):
    cfg = _write(tmp_path, {"kind": "nbody", "params": {"c": [1, 2]}})
    r = subprocess.run(["lab", "nbody", "--config", str(cfg), "--out", str(tmp_path / "o")],
                       capture_output=True, text=True)
    assert r.returncode == 0, r.stderr
    assert "spectrum.csv" in json.loads(r.stdout)["files"]


def test_module_entry(tmp_path):
    cfg = _write(tmp_path, {"kind": "lorenz", "params": {"rho": 0.5}})
    r = subprocess.run([sys.executable, "-m", "pflab.labcli", "validate", "--config", str(cfg)],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "warning" in r.stdout
