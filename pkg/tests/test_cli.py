import csv
import io
import json
import math
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from zgb import cli, core_numerics
from zgb.config import RunConfig, load_config, parse_env
from zgb.core_numerics import BernoulliTable
from zgb.emit import csv_table, dumps, fmt_float
from zgb.errors import ParameterError


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def read_csv(text):
    body = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(body))))


# ---- emission -------------------------------------------------------------

@given(st.floats(allow_nan=False, allow_infinity=False))
def test_float_rendering_round_trips(x):
    text = fmt_float(x)
    assert float(text) == x
    mantissa = text.split("e")[0].lstrip("-").replace(".", "")
    assert len(mantissa) == 17


def test_json_writer():
    text = dumps({"a": 1, "b": [0.5, None, True], "c": 1 + 2j, "d": "x\"y", "e": math.nan})
    data = json.loads(text)
    assert data == {"a": 1, "b": [0.5, None, True], "c": {"re": 1.0, "im": 2.0},
                     "d": 'x"y', "e": None}
    assert "5.0000000000000000e-01" in text


def test_csv_metadata_block():
    text = csv_table(("k", "v"), [(1, 0.25), (2, "a,b")], {"rho": 1.0})
    lines = text.splitlines()
    assert lines[0] == "# schema_version: 1"
    assert lines[1] == "# rho: 1.0000000000000000e+00"
    assert lines[-1] == '2,"a,b"'


# ---- configuration ----------------------------------------------------------

def test_config_defaults_and_validation():
    cfg = RunConfig()
    assert cfg.precision_mode == "auto" and cfg.bernoulli_depth == 64
    with pytest.raises(ParameterError):
        RunConfig(precision_mode="quad")
    with pytest.raises(ParameterError):
        RunConfig(K=100)
    with pytest.raises(ParameterError):
        RunConfig(bernoulli_depth=10)


def test_config_precedence(tmp_path):
    toml = tmp_path / "run.toml"
    toml.write_text('seed = 5\ntol = 1e-10\nprecision_mode = "standard"\n')
    cfg = load_config(str(toml), env={})
    assert (cfg.seed, cfg.tol, cfg.precision_mode) == (5, 1e-10, "standard")
    cfg = load_config(str(toml), env={"ZGB_CONFIG": "seed=6"})
    assert (cfg.seed, cfg.tol) == (6, 1e-10)
    cfg = load_config(str(toml), env={"ZGB_CONFIG": '{"seed": 6}'}, overrides={"seed": 7})
    assert cfg.seed == 7
    js = tmp_path / "env.json"
    js.write_text('{"zgb": {"K": 256}}')
    assert parse_env(str(js)) == {"K": 256}
    with pytest.raises(ParameterError):
        parse_env("bogus=1")
    with pytest.raises(ParameterError):
        parse_env("{not json")


# ---- commands ---------------------------------------------------------------

def test_eval_examples(capsys):
    code, out, _ = run(capsys, "eval", "2+0i")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema_version"] == 1
    assert abs(doc["value"]["re"] - 1.6449340668) < 1e-10
    assert set(doc) >= {"s", "value", "error_estimate", "params_used"}
    code, out, _ = run(capsys, "eval", "0.5+14.134725i")
    v = json.loads(out)["value"]
    assert abs(complex(v["re"], v["im"])) < 1e-6
    assert run(capsys, "eval", "1+0i")[0] == 3
    assert run(capsys, "eval", "two")[0] == 2
    assert run(capsys, "eval", "nan")[0] == 2


def test_parse_complex():
    assert cli.parse_complex("0.5+14.1i") == 0.5 + 14.1j
    assert cli.parse_complex("-3-0.5j") == -3 - 0.5j
    assert cli.parse_complex("2i") == 2j
    assert cli.parse_complex(" 7 ") == 7


def test_coeffs_examples(capsys):
    code, out, _ = run(capsys, "coeffs", "q", "--rho", "1")
    assert code == 0
    rows = {int(r["k"]): float(r["re"]) for r in read_csv(out)}
    assert abs(rows[-2] + 1) < 1e-12
    assert "# annulus: outer" in out
    code, out, _ = run(capsys, "coeffs", "q", "--rho", "0.25", "--format", "json")
    doc = json.loads(out)
    c0 = [c for c in doc["coefficients"] if c["k"] == 0][0]
    assert abs(c0["re"] - 4) < 1e-10
    assert doc["metadata"]["annulus"] == "inner"
    assert run(capsys, "coeffs", "q", "--rho", "0.5")[0] == 4


def test_coeffs_fgb_metadata(capsys):
    code, out, _ = run(capsys, "coeffs", "fgb", "--rho", "1", "--format", "json")
    meta = json.loads(out)["metadata"]
    assert code == 0 and meta["param_N"] >= 10 and meta["function"] == "fgb"


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", "q", "--rho", "1", "--window", "6", "--s-prime", "1j")
    assert code == 0
    rows = read_csv(out)
    assert {r["part"] for r in rows} == {"symmetric", "antisymmetric"}
    assert all((int(r["k"]) % 2 == 0) == (r["part"] == "symmetric") for r in rows)


def test_scan_command(capsys):
    code, out, _ = run(capsys, "scan", "2", "5")
    assert code == 0 and json.loads(out)["count"] == 0
    assert run(capsys, "scan", "30", "5")[0] == 2
    code, out, _ = run(capsys, "scan", "13", "15", "--no-residuals", "--format", "csv")
    rows = read_csv(out)
    assert len(rows) == 1 and abs(float(rows[0]["rho"]) - 14.134725) < 1e-6


def test_quartet_map_command(capsys):
    code, out, _ = run(capsys, "quartet-map", "10", "--alpha-count", "4")
    rows = read_csv(out)
    assert code == 0 and len(rows) == 4
    assert all(float(r["r_total"]) > 1e-3 for r in rows)
    assert run(capsys, "quartet-map", "0.4")[0] == 3


def test_figures_command(capsys):
    code, out, _ = run(capsys, "figures", "--rho", "1", "--points", "8")
    rows = read_csv(out)
    assert code == 0 and len(rows) == 8
    assert abs(float(rows[0]["re"]) - 1 / 3) < 1e-12 and float(rows[0]["im"]) == 0
    assert abs(float(rows[2]["re"]) + 0.2) < 1e-12
    for r in rows:
        assert abs(float(r["abs"]) - math.hypot(float(r["re"]), float(r["im"]))) < 1e-15
    assert run(capsys, "figures", "--rho", "0.3")[0] == 4


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "identity")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and doc["failing"] == []


def test_verify_detects_corrupted_bernoulli_table(capsys):
    bad = BernoulliTable(64)
    exact = list(bad.exact)
    exact[5] = exact[5] * 2
    object.__setattr__(bad, "_exact", tuple(exact))
    object.__setattr__(bad, "_floats", tuple(float(b) for b in exact))
    old = core_numerics.set_default_table(bad)
    try:
        code, out, err = run(capsys, "verify", "all")
    finally:
        core_numerics.set_default_table(old)
    assert code == 1
    assert "oracle.bernoulli_vs_akiyama_tanigawa" in json.loads(out)["failing"]
    assert "failing invariants" in err


def test_output_file_and_config(tmp_path, capsys, monkeypatch):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"output_dir": str(tmp_path / "out")}))
    code, out, _ = run(capsys, "figures", "--points", "4", "--config", str(cfg), "--out", "fig.csv")
    assert code == 0 and out == ""
    assert (tmp_path / "out" / "fig.csv").read_text().startswith("# schema_version: 1")
    monkeypatch.setenv("ZGB_CONFIG", "precision_mode=quad")
    assert run(capsys, "figures")[0] == 2


def test_bernoulli_depth_flag_is_scoped(capsys):
    code, _, _ = run(capsys, "eval", "3+1i", "--bernoulli-depth", "80")
    assert code == 0
    assert core_numerics.default_table().depth == 64


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "zgb", "eval", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and '"kind": "eval"' in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "zgb", "nonsense"], capture_output=True, text=True)
    assert proc.returncode == 2
