import json

import pytest

from linkagelab.report import (
    REPORT_SCHEMA,
    emit,
    envelope,
    exit_code_for,
    status_for,
    write_report_dir,
)


def test_exit_code_precedence():
    assert exit_code_for([]) == 0
    assert exit_code_for([{"verdict": "ok"}, {"verdict": "linked"}]) == 0
    assert exit_code_for([{"verdict": "not-linked"}]) == 0
    assert exit_code_for([{"verdict": "inconclusive"}, {"verdict": "ok"}]) == 3
    assert exit_code_for([{"verdict": "hypotheses-failed"}, {"verdict": "inconclusive"}]) == 2
    assert exit_code_for([{"verdict": "fail"}, {"verdict": "hypotheses-failed"}]) == 1
    assert exit_code_for([{"verdict": "resource"}, {"verdict": "fail"}]) == 5
    assert status_for(0) == "ok" and status_for(3) == "inconclusive"


def test_envelope_validates_and_is_stable():
    jsonschema = pytest.importorskip("jsonschema")
    results = [
        {"fixture": "a", "verifier": "link", "verdict": "linked"},
        {"fixture": "b", "verifier": "l6", "verdict": "fail"},
    ]
    doc = envelope("suite", results, seeds=3)
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert doc["exit_code"] == 1 and doc["status"] == "fail"
    assert emit(doc) == emit(json.loads(emit(doc)))


def test_report_dir_renders_all_verdicts(tmp_path):
    results = [
        {"fixture": "f1", "verifier": "link", "verdict": "linked", "conclusions": {}},
        {"fixture": "f1", "verifier": "l6", "verdict": "ok", "conclusions": {"g": True}},
        {"fixture": "f2", "verifier": "link", "verdict": "not-linked", "conclusions": {}},
        {"fixture": "f2", "verifier": "c8", "verdict": "inconclusive", "conclusions": {}},
        {"fixture": "f3", "verifier": "link", "verdict": "hypotheses-failed", "conclusions": {}},
        {"fixture": "f3", "verifier": "l7", "verdict": "fail", "conclusions": {"m": False}},
    ]
    doc = envelope("suite", results)
    out = tmp_path / "rep"
    write_report_dir(doc, str(out))
    rows = (out / "results.csv").read_text().splitlines()
    assert len(rows) == 1 + len(results)
    assert (out / "verdict_matrix.png").stat().st_size > 0
    assert (out / "verdict_counts.png").stat().st_size > 0
