import json
import numpy as np
import pytest

from common import *
from regulib.exactla import FieldPrime, jordan_block
from regulib.forms import SubspaceBasis
from regulib.jordan import JordanType
from regulib.key import canonical_json, generate_report_key
from regulib.report import *

@pytest.mark.parametrize('value,expected', [
    (np.int64(3), 3),
    (np.bool_(True), True),
    (JordanType((4, 2)), "4+2"),
    (jordan_block(FieldPrime(2), 2), [[1, 1], [0, 1]]),
    (SubspaceBasis.span(FieldPrime(3), [0, 2]), [[0, 1]]),
    (np.array([1, 2], dtype=object), [1, 2]),
    ({1: (JordanType((3,)), None)}, {"1": ["3", None]}),
])
def test_plain(value, expected):
    assert plain(value) == expected

def test_claims():
    c = claim_equal("jordan-type", JordanType((4,)), JordanType((4,)))
    assert c.passed
    assert c.to_dict() == {"name": "jordan-type", "expected": "4", "actual": "4", "pass": True}
    assert not claim_true("irreducible", 0).passed
    assert claim_true("irreducible", 1).to_dict()["actual"] is True

def test_report_item():
    ok = ReportItem("a", {"p": 2}, [claim_equal("x", 1, 1)])
    assert ok.passed
    assert "data" not in ok.to_dict()
    assert "error" not in ok.to_dict()
    failed = ReportItem("b", {"p": 4}, error="Parameter 'p' must be a prime")
    assert not failed.passed
    assert failed.to_dict()["error"] == "Parameter 'p' must be a prime"

def make_report(elapsed=None):
    items = [
        ReportItem("p=2", {"p": 2}, [claim_equal("order", 4, 4)], {"m": jordan_block(FieldPrime(2), 2)}),
        ReportItem("p=3", {"p": 3}, [claim_equal("order", 9, 3)]),
    ]
    return Report("prop-7.1", items, 0, elapsed)

def test_report_envelope():
    d = make_report().to_dict()
    assert list(d) == ["schema", "suite", "seed", "pass", "items", "digest"]
    assert d["schema"] == SCHEMA
    assert d["pass"] is False
    body = {k: v for k, v in d.items() if k != "digest"}
    assert d["digest"] == generate_report_key(body)
    assert d["items"][0]["data"] == {"m": [[1, 1], [0, 1]]}

def test_timing_does_not_change_the_digest():
    plain_report = make_report().to_dict()
    timed = make_report(12.3456).to_dict()
    assert timed["elapsed_ms"] == 12.346
    assert timed["digest"] == plain_report["digest"]

def test_report_json_round_trips_through_the_parser():
    report = make_report()
    assert json.loads(report.to_json()) == report.to_dict()

def test_report_tsv():
    lines = make_report().to_tsv().split("\n")
    assert lines[0] == "item\tclaim\texpected\tactual\tpass"
    assert lines[1] == "p=2\torder\t4\t4\tTrue"
    assert lines[2] == "p=3\torder\t9\t3\tFalse"
    failed = Report("x", [ReportItem("a", {}, error="boom")], 0)
    assert failed.to_tsv().split("\n")[1] == "a\terror\t-\tboom\tFalse"

def test_artifact():
    payload = artifact("g2", 0, {"jordan_type": JordanType((7,)), "u": jordan_block(FieldPrime(3), 2)})
    assert payload["data"] == {"jordan_type": "7", "u": [[1, 1], [0, 1]]}
    body = {k: v for k, v in payload.items() if k != "digest"}
    assert payload["digest"] == generate_report_key(body)
    lines = artifact_tsv(payload).split("\n")
    assert lines[:3] == ["key\tvalue", "jordan_type\t7", "u\t[[1,1],[0,1]]"]
    assert lines[-1] == f"digest\t{payload['digest']}"

def test_report_key_ignores_key_order():
    assert generate_report_key({"a": 1, "b": [2]}) == generate_report_key({"b": [2], "a": 1})
    assert generate_report_key({"a": 1}) != generate_report_key({"a": 2})
    assert canonical_json({"b": 1, "a": 2}).index('"b"') < canonical_json({"b": 1, "a": 2}).index('"a"')
