from dataclasses import dataclass, field
from typing import Any, Optional

HOLDS = "holds"
FAILS = "fails"
RESOURCE_EXCEEDED = "resource_exceeded"

YES = "yes"
NO = "no"


@dataclass
class CheckResult:
    """Outcome of checking one candidate against the chain condition."""

    status: str
    tuples_checked: int = 0
    witness: Optional[dict] = None
    warnings: list[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    def to_json_dict(self) -> dict:
        out: dict[str, Any] = {"status": self.status, "tuples_checked": self.tuples_checked}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.warnings:
            out["warnings"] = list(self.warnings)
        return out


@dataclass
class Verdict:
    answer: str
    constants: Optional[dict] = None
    caps_used: dict = field(default_factory=dict)
    witness: Optional[dict] = None
    certificate: Optional[str] = None
    truncation_warnings: list[str] = field(default_factory=list)
    exact: bool = True

    @property
    def exit_code(self) -> int:
        if self.answer == RESOURCE_EXCEEDED or not self.exact:
            return 2
        return 0

    def to_json_dict(self) -> dict:
        out: dict[str, Any] = {
            "answer": self.answer,
            "constants": self.constants,
            "caps_used": self.caps_used,
            "truncation_warnings": list(self.truncation_warnings),
            "exact": self.exact,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out
