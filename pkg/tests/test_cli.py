from __future__ import annotations

import io
import json
from pathlib import Path

import pytest

import tropijac.universal
from tropijac.cli import main

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def test_check_divisor():
    code, out, _ = run("check", "--graph", SAMPLES / "theta.json", "--divisor", SAMPLES / "d.json")
    doc = json.loads(out)
    assert code == 0 and doc["quasistable"] is False
    assert doc["witness"] == {"subset": [1], "beta": "-3/2", "status": "violating"}


def test_check_pseudo(tmp_path):
    p = tmp_path / "p.json"
    p.write_text(json.dumps({"edges": [0, 1], "divisor": {"values": [{"vertex": 0, "value": 1},
                                                                     {"vertex": 1, "value": 1}]}}))
    code, out, _ = run("check", "--graph", SAMPLES / "theta.json", "--pseudo", p)
    assert code == 0 and json.loads(out) == {"quasistable": True}


def test_reduce_graph_and_curve():
    code, out, _ = run("reduce", "--graph", SAMPLES / "theta.json", "--divisor", SAMPLES / "d.json")
    assert code == 0 and json.loads(out) == {"divisor": {"values": []}}
    code, out, _ = run("reduce", "--curve", SAMPLES / "theta_unit.json", "--divisor", SAMPLES / "curve_d.json",
                       "--trace")
    doc = json.loads(out)
    assert code == 0 and doc["trace"]["steps"] and doc["trace"]["final"] == doc["divisor"]


def test_poset_outputs_are_deterministic():
    a = run("poset", "--graph", SAMPLES / "theta.json")
    b = run("poset", "--graph", SAMPLES / "theta.json")
    assert a == b and len(json.loads(a[1])["elements"]) == 12
    code, dot, _ = run("poset", "--graph", SAMPLES / "theta.json", "--dot")
    assert code == 0 and dot.count("[label=") == 12


def test_jacobian_and_universal():
    code, out, _ = run("jacobian", "--curve", SAMPLES / "theta_unit.json")
    assert code == 0 and json.loads(out)["f_vector"] == [3, 6, 3]
    code, out, _ = run("universal", "--genus", 1, "--degree", 1)
    doc = json.loads(out)
    assert code == 0 and doc["report"]["ok"] and len(doc["elements"]) == 3


def test_polarization_options(tmp_path):
    code, _, err = run("poset", "--graph", SAMPLES / "theta.json", "--mu", "canonical")
    assert code == 2 and "--degree" in err
    code, out, _ = run("poset", "--graph", SAMPLES / "theta.json", "--mu", "canonical", "--degree", 2)
    assert code == 0
    mu = tmp_path / "mu.json"
    mu.write_text(json.dumps({"degree": 1, "values": [{"vertex": 1, "value": "1"}]}))
    code, out, _ = run("poset", "--graph", SAMPLES / "theta.json", "--mu", mu)
    assert code == 0 and len(json.loads(out)["elements"]) == 12
    code, _, err = run("poset", "--graph", SAMPLES / "theta.json", "--mu", mu, "--degree", 0)
    assert code == 2


def test_bad_input_exits_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": [')
    code, _, err = run("poset", "--graph", bad)
    assert code == 2 and "line 1" in err
    code, _, err = run("poset", "--graph", tmp_path / "missing.json")
    assert code == 2
    code, _, err = run("universal", "--genus", 5)
    assert code == 2 and "cap" in err


def test_consistency_failure_exits_3(monkeypatch):
    real = tropijac.universal.verify_universal_theorems

    def broken(U, check_pushforwards=True):
        rep = real(U, check_pushforwards)
        rep.pure_dimension = False
        rep.violations.append("forced")
        return rep

    monkeypatch.setattr(tropijac.universal, "verify_universal_theorems", broken)
    code, _, err = run("universal", "--genus", 1)
    assert code == 3 and "forced" in err


def test_usage_error():
    with pytest.raises(SystemExit) as exc:
        run("reduce")
    assert exc.value.code == 2
