"""Structured pass/fail records and their canonical serialization.

Reports are emitted by every scenario and by several library operations.
The JSON form is produced by a small canonical emitter so that two runs with
the same configuration yield byte-identical output: dictionary keys keep
insertion order and floating-point values are written with 17 significant
digits, which round-trips every double exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field


@dataclass
class CheckResult:
    """Outcome of one named check: a verdict plus the measured residual."""

    name: str
    passed: bool
    residual: float
    witness: object | None = None

    def to_dict(self) -> dict:
        out: dict = {
            "name": self.name,
            "pass": bool(self.passed),
            "residual": float(self.residual),
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class Report:
    """Bundle of checks for one scenario."""

    scenario: str
    checks: list[CheckResult]
    tol: float
    seed: int = 0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "checks": [c.to_dict() for c in self.checks],
            "tol": float(self.tol),
            "seed": int(self.seed),
        }


@dataclass
class AggregateReport:
    """All scenario reports of a run, ordered by scenario name."""

    reports: list[Report]
    tol: float
    seed: int = 0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def to_dict(self) -> dict:
        return {
            "scenario": "all",
            "pass": self.passed,
            "tol": float(self.tol),
            "seed": int(self.seed),
            "reports": [r.to_dict() for r in self.reports],
        }


REPORT_SCHEMA = {
    "type": "object",
    "required": ["scenario", "checks", "tol", "seed"],
    "additionalProperties": False,
    "properties": {
        "scenario": {"type": "string"},
        "tol": {"type": "number"},
        "seed": {"type": "integer"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "pass", "residual"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "pass": {"type": "boolean"},
                    "residual": {"type": "number"},
                    "witness": {},
                },
            },
        },
    },
}

AGGREGATE_SCHEMA = {
    "type": "object",
    "required": ["scenario", "pass", "tol", "seed", "reports"],
    "additionalProperties": False,
    "properties": {
        "scenario": {"const": "all"},
        "pass": {"type": "boolean"},
        "tol": {"type": "number"},
        "seed": {"type": "integer"},
        "reports": {"type": "array", "items": REPORT_SCHEMA},
    },
}


def format_float(x: float) -> str:
    """Render a float with 17 significant digits as a valid JSON number."""
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        raise ValueError("reports must contain finite numbers only")
    s = format(x, ".17g")
    if not any(c in s for c in ".eE"):
        s += ".0"
    return s


def dumps_canonical(obj: object, indent: int = 0) -> str:
    """Serialize a report dictionary deterministically.

    Supports the JSON subset used by reports (dict, list, str, bool, int,
    float, None). Keys keep insertion order; floats go through
    ``format_float``.
    """
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        parts = [
            f"{inner}{json.dumps(str(k))}: {dumps_canonical(v, indent + 1)}"
            for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(parts) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        parts = [f"{inner}{dumps_canonical(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(parts) + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__} into a report")


def render_json(report: Report | AggregateReport) -> str:
    return dumps_canonical(report.to_dict()) + "\n"


def render_text(report: Report | AggregateReport) -> str:
    lines: list[str] = []
    if isinstance(report, AggregateReport):
        for sub in report.reports:
            lines.append(render_text(sub).rstrip("\n"))
            lines.append("")
        n_pass = sum(1 for r in report.reports if r.passed)
        verdict = "PASS" if report.passed else "FAIL"
        lines.append(f"overall: {verdict} ({n_pass}/{len(report.reports)} scenarios)")
        return "\n".join(lines) + "\n"
    lines.append(f"scenario: {report.scenario}")
    lines.append(f"tol={format_float(report.tol)} seed={report.seed}")
    for c in report.checks:
        mark = "PASS" if c.passed else "FAIL"
        line = f"  [{mark}] {c.name:<44s} residual={format_float(c.residual)}"
        if c.witness is not None:
            line += f" witness={c.witness}"
        lines.append(line)
    n_pass = sum(1 for c in report.checks if c.passed)
    verdict = "PASS" if report.passed else "FAIL"
    lines.append(f"result: {verdict} ({n_pass}/{len(report.checks)} checks)")
    return "\n".join(lines) + "\n"
