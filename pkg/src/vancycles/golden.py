"""Golden cases: a scenario plus the part of its report that must match exactly.

Each case is {"name", "scenario": bundled name or inline object, "expect"}.
Objects in "expect" match when every listed key matches (extra report keys
are ignored); lists must match element by element; scalars must be equal.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InconsistencyError, InputError
from .fixtures import golden_cases, load_scenario
from .scenario import run_scenario


@dataclass
class GoldenResult:
    name: str
    ok: bool
    diffs: list = field(default_factory=list)

    def to_json(self):
        return {"name": self.name, "ok": self.ok, "diffs": self.diffs}


def compare(expect, actual, path="$") -> list[str]:
    if isinstance(expect, dict):
        if not isinstance(actual, dict):
            return [f"{path}: expected an object, got {actual!r}"]
        out = []
        for k, v in expect.items():
            if k not in actual:
                out.append(f"{path}.{k}: missing")
            else:
                out += compare(v, actual[k], f"{path}.{k}")
        return out
    if isinstance(expect, list):
        if not isinstance(actual, list):
            return [f"{path}: expected a list, got {actual!r}"]
        if len(expect) != len(actual):
            return [f"{path}: expected {len(expect)} items, got {len(actual)}: {actual!r}"]
        out = []
        for i, (e, a) in enumerate(zip(expect, actual)):
            out += compare(e, a, f"{path}[{i}]")
        return out
    if expect != actual or type(expect) is not type(actual):
        return [f"{path}: expected {expect!r}, got {actual!r}"]
    return []


def run_case(case: dict) -> GoldenResult:
    name = case.get("name", "?")
    sc = case["scenario"]
    try:
        if isinstance(sc, str):
            sc = load_scenario(sc)
        report = run_scenario(sc)
    except (InputError, InconsistencyError) as e:
        return GoldenResult(name, False, [f"error: {e}"])
    diffs = compare(case["expect"], report)
    return GoldenResult(name, not diffs, diffs)


def run_golden(cases=None) -> list[GoldenResult]:
    cases = golden_cases() if cases is None else cases
    return [run_case(c) for c in cases]


def summary(results) -> dict:
    return {"total": len(results), "passed": sum(r.ok for r in results),
            "failed": [r.name for r in results if not r.ok],
            "results": [r.to_json() for r in results]}
