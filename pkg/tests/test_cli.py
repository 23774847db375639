import json
import subprocess
import sys

import pytest

from rigiditylab.cli import main, parse_complex
from rigiditylab.errors import FixtureError
from rigiditylab.fixture_io import BUNDLED, bundled_fixture, fixture_to_dict, load_fixture, loads_fixture


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_complex():
    assert parse_complex("1i") == 1j
    assert parse_complex("-1i") == -1j
    assert parse_complex("i") == 1j
    assert parse_complex("-i") == -1j
    assert parse_complex("0.4+0.7i") == 0.4 + 0.7j
    assert parse_complex("2") == 2
    assert parse_complex("1e-3-2.5i") == 0.001 - 2.5j


def test_theta(capsys):
    code, out, _ = run(capsys, "theta", "--kind", "t3", "--v", "0", "--tau", "1i")
    assert code == 0 and out.strip().startswith("1.08643481121331")
    code, out, _ = run(capsys, "theta", "--kind", "t", "--v", "0", "--tau", "1i")
    assert code == 0 and abs(complex(out.strip().replace("i", "j"))) <= 1e-15
    code, _, err = run(capsys, "theta", "--kind", "t", "--v", "0", "--tau", "-1i")
    assert code == 2 and "tau not in upper half-plane" in err
    code, _, _ = run(capsys, "theta", "--kind", "t9", "--v", "0", "--tau", "1i")
    assert code == 2
    code, _, _ = run(capsys, "theta", "--kind", "t", "--v", "zz", "--tau", "1i")
    assert code == 2


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "jacobi", "--samples", "20", "--tol", "1e-10")
    assert code == 0 and "PASS" in out
    code, out, _ = run(capsys, "verify", "--suite", "chseries", "--samples", "10", "--tol", "1e-9")
    assert code == 0
    code, _, _ = run(capsys, "verify", "--suite", "nosuch")
    assert code == 2
    code, out, _ = run(capsys, "verify", "--suite", "modular", "--samples", "20", "--tol", "1e-30")
    assert code == 1 and "FAIL" in out


def test_rigidity(capsys, tmp_path):
    code, out, _ = run(capsys, "rigidity", "--fixture", "s2.json", "--lambda", "2", "--K", "4")
    doc = json.loads(out)
    assert code == 0 and all(o["is_constant"] and o["constant"] == "0" for o in doc["orders"])
    assert list(doc) == ["fixture", "lambda", "K", "orders", "anomaly", "residuals"]
    code, out, _ = run(capsys, "rigidity", "--fixture", "onepoint.json", "--lambda", "2", "--K", "2", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 1 and lines[0] == "order,verdict,constant" and lines[1].startswith("0,non_laurent")
    code, _, err = run(capsys, "rigidity", "--fixture", str(tmp_path / "broken.json"))
    assert code == 3
    bad = tmp_path / "bad.json"
    bad.write_text('{"name": "b", "d": 1, "l": 0, "components": [{"tangent_weights": [0]}]}')
    code, _, err = run(capsys, "rigidity", "--fixture", str(bad))
    assert code == 3 and "zero tangent weight" in err
    bad.write_text("{not json")
    assert run(capsys, "rigidity", "--fixture", str(bad))[0] == 3


def test_report_round_trip(capsys, tmp_path):
    for name in BUNDLED:
        code, out, _ = run(capsys, "rigidity", "--fixture", name, "--K", "1")
        path = tmp_path / f"{name}_report.json"
        path.write_text(out)
        assert load_fixture(path) == bundled_fixture(name)


def test_modularity(capsys):
    code, out, _ = run(capsys, "modularity", "--fixture", "s2.json", "--g", "T", "--tol", "1e-10")
    assert code == 0
    code, _, _ = run(capsys, "modularity", "--fixture", "s2.json", "--g", "S", "--tol", "1e-8")
    assert code == 0
    code, out, _ = run(capsys, "modularity", "--fixture", "anomalous.json", "--g", "S", "--tol", "1e-8")
    assert code == 0 and "anomaly=present" in out.splitlines()[0]
    rows = [l for l in out.splitlines() if not l.startswith("#")]
    assert rows[0] == "lambda,t,tau,residual" and len(rows) == 1 + 3 * 25
    assert run(capsys, "modularity", "--fixture", "nosuch.json", "--g", "S")[0] == 3


def test_modularity_deterministic_across_threads(capsys, monkeypatch):
    outs = []
    for threads in ("1", "4"):
        monkeypatch.setenv("RIGIDITYLAB_THREADS", threads)
        outs.append(run(capsys, "modularity", "--fixture", "s4", "--g", "S", "--grid", "3")[1])
    assert outs[0] == outs[1]


def test_qexpand(capsys, tmp_path):
    empty = tmp_path / "empty.json"
    empty.write_text('{"name": "empty", "d": 1, "l": 0, "components": []}')
    code, out, _ = run(capsys, "qexpand", "--fixture", str(empty), "--K", "2")
    assert code == 0 and out.splitlines() == ["k=0: 0", "k=1: 0", "k=2: 0"]
    code, out, _ = run(capsys, "qexpand", "--fixture", "s2", "--K", "3")
    assert all(line.endswith(": 0") for line in out.splitlines())
    code, out, _ = run(capsys, "qexpand", "--fixture", "onepoint", "--K", "0")
    # 2i (z + 1/z + 4) / (z - 1/z) in canonical form
    assert out.strip() == "k=0: (-2i*z^2-8i*z-2i)/(-z^2+1)"
    assert run(capsys, "qexpand", "--fixture", "broken.json")[0] == 3


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "rigidity", "--fixture", "s2", "--K", "-1")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_fixture_schema():
    doc = fixture_to_dict(bundled_fixture("s4"))
    assert loads_fixture(json.dumps(doc)) == bundled_fixture("s4")
    doc["extra"] = 1
    with pytest.raises(FixtureError, match="unknown keys"):
        loads_fixture(json.dumps(doc))
    doc = fixture_to_dict(bundled_fixture("s4"))
    doc["components"][0]["colour"] = "red"
    with pytest.raises(FixtureError):
        loads_fixture(json.dumps(doc))
    with pytest.raises(FixtureError, match="length mismatch"):
        loads_fixture('{"name": "x", "d": 1, "l": 1, "components": [{"tangent_weights": [1], "bundle_weights": []}]}')
    with pytest.raises(FixtureError):
        loads_fixture('{"name": "x", "d": 1, "l": 0, "components": [{"tangent_weights": [1.0]}]}')
    with pytest.raises(FixtureError):
        loads_fixture("[1, 2]")


def test_bundled_fixtures_carry_comments():
    for name in BUNDLED:
        assert "Expected verdict" in bundled_fixture(name).comment


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rigiditylab", "theta", "--kind", "t3", "--v", "0", "--tau", "1i"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("1.0864348112133")
