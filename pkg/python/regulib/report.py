import json
import numpy as np
from dataclasses import dataclass, field

from .exactla import Matrix
from .forms import SubspaceBasis
from .jordan import JordanType
from .key import canonical_json, generate_report_key

SCHEMA = "regulib-report/1"

# Converts claim values into JSON-compatible data: integers in base 10,
# matrices row-major, partitions in the "n1+n2+..." format.
def plain(value):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, JordanType):
        return str(value)
    if isinstance(value, (Matrix, SubspaceBasis)):
        return value.tolist()
    if isinstance(value, np.ndarray):
        return [[int(x) for x in row] for row in value.tolist()] if value.ndim == 2 else \
            [int(x) for x in value.tolist()]
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if value is None or isinstance(value, str):
        return value
    return str(value)

@dataclass(frozen=True)
class Claim:
    name: str
    expected: object
    actual: object
    passed: bool

    def to_dict(self):
        return {
            "name": self.name,
            "expected": plain(self.expected),
            "actual": plain(self.actual),
            "pass": bool(self.passed),
        }

def claim_equal(name, expected, actual):
    return Claim(name, expected, actual, expected == actual)

def claim_true(name, actual):
    return Claim(name, True, bool(actual), bool(actual))

@dataclass
class ReportItem:
    id: str
    params: dict
    claims: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    error: str = None

    @property
    def passed(self):
        return self.error is None and all(c.passed for c in self.claims)

    def to_dict(self):
        out = {
            "id": self.id,
            "params": plain(self.params),
            "claims": [c.to_dict() for c in self.claims],
            "pass": self.passed,
        }
        if self.data:
            out["data"] = plain(self.data)
        if self.error is not None:
            out["error"] = self.error
        return out

@dataclass
class Report:
    suite: str
    items: list
    seed: int
    elapsed_ms: float = None

    @property
    def passed(self):
        return all(item.passed for item in self.items)

    def to_dict(self):
        payload = {
            "schema": SCHEMA,
            "suite": self.suite,
            "seed": self.seed,
            "pass": self.passed,
            "items": [item.to_dict() for item in self.items],
        }
        payload["digest"] = generate_report_key(payload)
        if self.elapsed_ms is not None:
            payload["elapsed_ms"] = round(self.elapsed_ms, 3)
        return payload

    def to_json(self):
        return canonical_json(self.to_dict())

    def to_tsv(self):
        rows = ["item\tclaim\texpected\tactual\tpass"]
        for item in self.items:
            if item.error is not None:
                rows.append(f"{item.id}\terror\t-\t{item.error}\tFalse")
            for c in item.claims:
                d = c.to_dict()
                rows.append(f"{item.id}\t{c.name}\t{_cell(d['expected'])}\t{_cell(d['actual'])}\t{d['pass']}")
        return "\n".join(rows)

def _cell(value):
    if isinstance(value, str):
        return value
    return json.dumps(value, separators=(",", ":"))

# Wraps a construction dump in the versioned envelope used by the verify
# reports.
def artifact(construction, seed, data):
    payload = {"schema": SCHEMA, "construction": construction, "seed": seed, "data": plain(data)}
    payload["digest"] = generate_report_key(payload)
    return payload

def artifact_tsv(payload):
    rows = ["key\tvalue"]
    for k, v in payload["data"].items():
        rows.append(f"{k}\t{_cell(v)}")
    rows.append(f"digest\t{payload['digest']}")
    return "\n".join(rows)
