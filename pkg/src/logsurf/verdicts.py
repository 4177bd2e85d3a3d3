"""Three-valued verdicts, hypothesis statuses and the exit-code rule."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping


class Verdict(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, ok: bool) -> "Verdict":
        return cls.HOLDS if ok else cls.FAILS


class Status(str, Enum):
    MET = "met"
    UNMET = "unmet"
    ASSERTED = "asserted"

    @classmethod
    def of(cls, ok: bool) -> "Status":
        return cls.MET if ok else cls.UNMET

    @property
    def ok(self) -> bool:
        return self is not Status.UNMET


EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INVALID = 2
EXIT_UNMET = 3
EXIT_UNKNOWN = 4


@dataclass(frozen=True)
class Check:
    """A named inequality with the hypotheses it depends on."""

    name: str
    verdict: Verdict
    requires: tuple[str, ...] = ()
    detail: Mapping[str, str] | None = None

    def applicable(self, hypotheses: Mapping[str, Status]) -> bool:
        return all(hypotheses.get(h, Status.MET).ok for h in self.requires)

    def to_json(self) -> dict:
        out = {"name": self.name, "verdict": self.verdict.value}
        if self.requires:
            out["requires"] = list(self.requires)
        if self.detail:
            out["detail"] = dict(self.detail)
        return out


def exit_code(checks: Iterable[Check], hypotheses: Mapping[str, Status]) -> int:
    """1 if an applicable check fails, else 3 if a hypothesis is unmet,
    else 4 if an applicable check is unknown, else 0."""
    checks = list(checks)
    live = [c for c in checks if c.applicable(hypotheses)]
    if any(c.verdict is Verdict.FAILS for c in live):
        return EXIT_FAIL
    if any(s is Status.UNMET for s in hypotheses.values()):
        return EXIT_UNMET
    if any(c.verdict is Verdict.UNKNOWN for c in live):
        return EXIT_UNKNOWN
    return EXIT_OK
