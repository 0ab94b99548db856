from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List

# Element i of the ground set lives at bit i.
Subset = int


class ErrorKind(str, Enum):
    INVALID_INPUT = "invalid_input"
    LIMIT_EXCEEDED = "limit_exceeded"
    PROPERTY_VIOLATION = "property_violation"
    INTERNAL_CONSISTENCY = "internal_consistency"


class Verdict(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    SKIPPED = "SKIPPED"


class OutputMode(str, Enum):
    HUMAN = "human"
    TSV = "tsv"


class SelftestScope(str, Enum):
    QUICK = "quick"
    FULL = "full"


@dataclass(frozen=True)
class CriterionResult:
    name: str
    verdict: Verdict
    detail: str = ""
    seconds: float = 0.0


@dataclass
class SelftestReport:
    scope: SelftestScope
    seed: int
    results: List[CriterionResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(item.verdict != Verdict.FAIL for item in self.results)

    def counts(self) -> Dict[str, int]:
        totals = {verdict.value: 0 for verdict in Verdict}
        for item in self.results:
            totals[item.verdict.value] += 1
        return totals
