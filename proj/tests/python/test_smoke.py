import json
import pathlib

import pytest

import diffgal

DATA = pathlib.Path(__file__).resolve().parents[2] / "data" / "systems"


def test_canonical():
    assert diffgal.canonical("(x^2-1)/(x-1)") == diffgal.canonical("x+1")
    with pytest.raises(diffgal.ParseError):
        diffgal.canonical("sqrt(2)")


def test_analyze_constant_diagonal():
    r = diffgal.analyze({"case": "S", "matrix": [["2", "0"], ["0", "3"]]})
    assert r["integrability"]["verdict"] == "Found"
    assert r["integrability"]["verified"] is True
    assert r["metadata"]["tool"] == "diffgal"


def test_not_integrable_q():
    r = diffgal.integrable({"case": "Q", "q": "2", "matrix": [["x", "0"], ["0", "1"]]})
    assert r["integrability"]["verdict"] == "No"


def test_bundled_documents_match_between_calls():
    docs = sorted(DATA.glob("*.json"))
    assert len(docs) == 12
    for p in docs:
        text = p.read_text()
        assert diffgal._diffgal.analyze(text) == diffgal._diffgal.analyze(text)


def test_gauge_then_integrable():
    doc = {"case": "S", "matrix": [["2", "0"], ["0", "3"]]}
    gauged = diffgal.gauge(doc, [["1", "x"], ["0", "1"]])
    r = diffgal.integrable(gauged)
    assert r["integrability"]["verdict"] == "Found"
    assert r["integrability"]["verified"] is True


def test_kron():
    doc = {"case": "S", "matrix": [["2", "0"], ["0", "3"]]}
    k = diffgal.kron(doc)
    assert len(k["matrix"]) == 4


def test_telescope():
    assert diffgal.telescope("1/x")["outcome"] == "NoSolution"
    r = diffgal.telescope("1/(x+1) - 1/x")
    assert r["outcome"] == "Found" and r["verified"] is True
    r = diffgal.telescope("x", case="Q", q=2, allow_constant=True)
    assert r["verified"] is True


def test_scalar_and_lifts():
    assert diffgal.scalar_classify("x")["scalar"]["verdict"] == "Hypertranscendental"
    assert diffgal.lift_report("SL(2)^2")["diff_transcendence_degree_lower_bound"] == 6
    assert diffgal.companion_report(["x", "x^2", "x^3"])["diff_transcendence_degree_lower_bound"] == 9


def test_errors():
    with pytest.raises(diffgal.DiffgalError):
        diffgal.analyze({"case": "S", "matrix": [["1", "1"], ["1", "1"]]})
    with pytest.raises(diffgal.DiffgalError):
        diffgal.analyze(json.dumps({"case": "Q", "matrix": [["x"]]}))
