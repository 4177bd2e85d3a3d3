"""Structured reports and their JSON / text renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping

from .verdicts import EXIT_FAIL, EXIT_INVALID, EXIT_OK, EXIT_UNKNOWN, EXIT_UNMET, Check, Status, Verdict

STATUS_WORDS = {
    EXIT_OK: "ok",
    EXIT_FAIL: "fails",
    EXIT_INVALID: "invalid",
    EXIT_UNMET: "hypothesis-unmet",
    EXIT_UNKNOWN: "unknown",
}

# batch severity: the most serious outcome wins
_SEVERITY = (EXIT_INVALID, EXIT_FAIL, EXIT_UNMET, EXIT_UNKNOWN, EXIT_OK)


def combine_exit_codes(codes) -> int:
    codes = set(codes)
    for code in _SEVERITY:
        if code in codes:
            return code
    return EXIT_OK


@dataclass(frozen=True)
class Report:
    command: str
    scenario: str
    exit_code: int
    checks: tuple[Check, ...] = ()
    hypotheses: Mapping[str, Status] = field(default_factory=dict)
    result: Mapping[str, Any] = field(default_factory=dict)
    error: str | None = None
    children: tuple["Report", ...] = ()

    @property
    def status(self) -> str:
        return STATUS_WORDS.get(self.exit_code, str(self.exit_code))

    def to_json(self) -> dict:
        out: dict[str, Any] = {
            "command": self.command,
            "scenario": self.scenario,
            "exit_code": self.exit_code,
            "status": self.status,
            "checks": [c.to_json() for c in self.checks],
            "hypotheses": {k: v.value for k, v in self.hypotheses.items()},
            "result": self.result,
        }
        if self.error is not None:
            out["error"] = self.error
        if self.children:
            out["reports"] = [r.to_json() for r in self.children]
        return out

    @classmethod
    def from_json(cls, obj: Mapping[str, Any]) -> "Report":
        checks = tuple(
            Check(
                name=c["name"],
                verdict=Verdict(c["verdict"]),
                requires=tuple(c.get("requires", ())),
                detail=c.get("detail"),
            )
            for c in obj.get("checks", ())
        )
        return cls(
            command=obj["command"],
            scenario=obj["scenario"],
            exit_code=obj["exit_code"],
            checks=checks,
            hypotheses={k: Status(v) for k, v in obj.get("hypotheses", {}).items()},
            result=obj.get("result", {}),
            error=obj.get("error"),
            children=tuple(cls.from_json(r) for r in obj.get("reports", ())),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False)

    @classmethod
    def loads(cls, text: str) -> "Report":
        return cls.from_json(json.loads(text))


def _flatten(prefix: str, value: Any, lines: list[str]) -> None:
    if isinstance(value, Mapping):
        if "lo" in value and "hi" in value and len(value) == 2:
            mid = (Fraction(value["lo"]) + Fraction(value["hi"])) / 2
            lines.append(f"  {prefix:<32} ≈ {float(mid):.12g}  [{value['lo']}, {value['hi']}]")
            return
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, lines)
    elif isinstance(value, list) and value and all(isinstance(v, Mapping) for v in value):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, lines)
    else:
        lines.append(f"  {prefix:<32} {value}")


def render_text(report: Report) -> str:
    lines = [f"{report.command} {report.scenario}: {report.status} (exit {report.exit_code})"]
    if report.error:
        lines.append(f"  error: {report.error}")
    if report.hypotheses:
        lines.append(" hypotheses")
        for k, v in report.hypotheses.items():
            lines.append(f"  {k:<40} {v.value}")
    if report.checks:
        lines.append(" checks")
        for c in report.checks:
            tag = "" if c.applicable(report.hypotheses) else "  (not applicable)"
            lines.append(f"  {c.name:<40} {c.verdict.value}{tag}")
    if report.result:
        lines.append(" values")
        _flatten("", report.result, lines)
    for child in report.children:
        lines.append("")
        lines.append(render_text(child))
    return "\n".join(lines)
