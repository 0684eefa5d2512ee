"""Structured pass/fail reports for verification checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not_applicable"


@dataclass
class Report:
    claim: str
    status: str
    witness: Any = None
    computed: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        out = {"claim": self.claim, "status": self.status, "computed": self.computed}
        if self.witness is not None:
            out["witness"] = self.witness
        return out
