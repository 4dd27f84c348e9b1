import json

import pytest

from tropideals.cli import run

POINT_IDEAL = json.dumps({
    "version": 1,
    "ambient": {"kind": "projective", "vars": ["x0", "x1", "x2"]},
    "field": "trivial",
    "degree_bound": 3,
    "generators": ["x1 - x0", "x2 - x0"],
})

CONIC = json.dumps({
    "version": 1,
    "ambient": {"kind": "projective", "vars": ["x", "y", "z"]},
    "field": "p-adic:2",
    "degree_bound": 3,
    "generators": ["x*y + x*z + y*z + 2*z^2"],
})

CONIC_CHART = json.dumps({
    "version": 1,
    "ambient": {"kind": "laurent", "vars": ["y", "z"]},
    "field": "p-adic:2",
    "degree_bound": 4,
    "generators": ["y + z + y*z + 2*z^2"],
})

EXAMPLE35_CIRCUITS = json.dumps({
    "version": 1,
    "ambient": {"kind": "affine", "vars": ["x1", "x2", "x3"]},
    "field": "trivial",
    "degree_bound": 1,
    "circuits": {"1": ["x0 oplus x1", "x2 oplus x3"]},
})

LINE_COMPLEX = json.dumps({
    "version": 1,
    "nvars": 2,
    "dim": 1,
    "cells": [
        {"eqs": [[["1", "-1"], "0"]], "ineqs": [[["1", "0"], "0"]], "weight": 1},
        {"eqs": [[["0", "1"], "0"]], "ineqs": [[["-1", "0"], "0"]], "weight": 1},
        {"eqs": [[["1", "0"], "0"]], "ineqs": [[["0", "-1"], "0"]], "weight": 1},
        {"eqs": [[["1", "0"], "0"], [["0", "1"], "0"]], "ineqs": []},
    ],
})


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in [
        ("point.json", POINT_IDEAL),
        ("conic.json", CONIC),
        ("chart.json", CONIC_CHART),
        ("ex35.json", EXAMPLE35_CIRCUITS),
        ("line-complex.json", LINE_COMPLEX),
    ]:
        f = tmp_path / name
        f.write_text(text)
        paths[name] = str(f)
    return paths


def _run(argv):
    code, out = run(argv)
    return code, (json.loads(out) if out.startswith("{") else out)


def test_factor_paper_example():
    code, env = _run(["factor", "min(3x, 1+2x, x, 1)"])
    assert code == 0
    assert env["payload"]["roots"] == [["0", 2], ["1", 1]]


def test_eval():
    code, env = _run(["eval", "x oplus 0", "-w", "1"])
    assert code == 0 and env["payload"]["value"] == "0"
    code, env = _run(["eval", "inf", "-w", "3"])
    assert env["payload"]["value"] == "inf"


def test_hilbert_and_dim_degree(files):
    code, env = _run(["hilbert", files["conic.json"], "-d", "3"])
    assert code == 0 and env["payload"]["value"] == 7
    code, env = _run(["dim", files["conic.json"], "--degree-bound", "5"])
    assert code == 0 and env["payload"]["dimension"] == 1
    code, env = _run(["degree", files["conic.json"], "--degree-bound", "5"])
    assert code == 0 and env["payload"]["degree"] == 2


def test_initial_both_modes(files):
    code, env = _run(["initial", files["point.json"], "-o", "revlex"])
    assert code == 0
    assert env["payload"]["min_generators"] == [[1, 0, 0], [0, 1, 0]]
    code, env = _run(["initial", files["point.json"], "-w", "1,0,2"])
    assert code == 0
    code, env = _run(["initial", files["point.json"]])
    assert code == 1


def test_cone(files):
    code, env = _run(["cone", files["point.json"], "-o", "revlex"])
    assert code == 0
    assert sorted(env["payload"]["ineqs"]) == [
        [["0", "1", "-1"], "0"],
        [["1", "0", "-1"], "0"],
    ]


def test_trop_and_validate(files):
    code, env = _run(["trop", files["conic.json"]])
    assert code == 0
    assert env["payload"]["hilbert"] == [1, 3, 5, 7]
    assert "x*y oplus x*z oplus y*z oplus 1 odot z^2" in env["payload"]["circuits"]["2"]
    code, env = _run(["validate", files["point.json"]])
    assert code == 0 and env["payload"]["valid"] is True


def test_variety_and_mult(files):
    code, env = _run(["variety", files["point.json"], "--degree-bound", "1"])
    assert code == 0
    cells = env["payload"]["cells"]
    assert any(c["dim"] == 0 for c in cells)
    code, env = _run(["mult", files["chart.json"], "-w", "10,10"])
    assert code == 0 and env["payload"]["multiplicity"] == 1
    code, env = _run(["mult", files["chart.json"], "-w", "0,0"])
    assert code == 1  # a vertex is not in the relative interior of a maximal cell


def test_groebner_complex_and_recession(files):
    code, env = _run(["groebner-complex", files["conic.json"], "--degree-bound", "2"])
    assert code == 0
    dims = sorted({c["dim"] for c in env["payload"]["cells"]})
    assert dims == [0, 1, 2]
    code, env = _run(["recession-fan", files["conic.json"], "--degree-bound", "2"])
    assert code == 0


def test_specialize_explicit_flag(files):
    code, env = _run(["specialize", files["ex35.json"], "-i", "2", "-a", "0"])
    assert code == 2  # caveat-bearing partial result
    assert "elimination-closure, possibly incomplete" in env["caveats"]
    assert "x1 oplus x2" in env["payload"]["circuits"]["1"]


def test_specialize_gauss(files):
    code, env = _run(["specialize", files["chart.json"], "-i", "0", "-a", "5"])
    assert code == 0
    assert env["payload"]["hilbert"] == [1, 2, 2, 2, 2]


def test_balance_and_stable_intersect(files):
    code, env = _run(["balance", files["line-complex.json"]])
    assert code == 0 and env["payload"]["balanced"] is True
    code, env = _run(["stable-intersect", files["line-complex.json"], "-i", "0", "-a", "-1"])
    assert code == 0
    weighted = [c for c in env["payload"]["cells"] if c.get("weight")]
    assert len(weighted) == 1 and weighted[0]["weight"] == 1


def test_eliminate(files):
    code, env = _run(["eliminate", files["chart.json"], "--keep", "z"])
    assert code == 0
    assert all(not v for v in env["payload"]["circuits"].values())


def test_export_svg(files):
    code, env = _run(["export", files["chart.json"], "--what", "variety",
                      "--format", "svg", "--degree-bound", "2"])
    assert code == 0
    assert env["payload"]["svg"].startswith("<svg")


def test_deterministic_output(files):
    a = run(["variety", files["point.json"], "--degree-bound", "1", "--seed", "7"])
    b = run(["variety", files["point.json"], "--degree-bound", "1", "--seed", "7"])
    assert a == b


def test_parse_error_reports_position():
    code, env = _run(["eval", "min(x @ y)", "-w", "0"])
    assert code == 1
    assert "column" in env["error"]


def test_pretty_mode(files):
    code, out = run(["--pretty", "degree", "conic-missing.json"])
    assert code == 1
    code, out = run(["degree", "--pretty", "nonexistent.json"])
    assert code == 1
