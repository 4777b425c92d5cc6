"""
Pydantic schemas for verification reports
Every suite returns a SuiteReport made of CaseResult entries
"""
import json
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class CaseStatus(str, Enum):
    """Case status enumeration"""
    OK = "OK"
    FAIL = "FAIL"
    SKIP = "SKIP"
    ERROR = "ERROR"


class CaseResult(BaseModel):
    """Result of a single verification case"""
    id: str
    status: CaseStatus
    detail: str = ""
    duration: float = Field(default=0.0, exclude=True)

    def line(self) -> str:
        text = f"{self.id} : {self.status.value}"
        if self.detail and self.status != CaseStatus.OK:
            text += f" ({self.detail})"
        return text


class SuiteReport(BaseModel):
    """Complete report of one suite run"""
    suite: str
    instance: str
    cases: List[CaseResult] = []
    extra: Dict[str, Any] = {}

    @property
    def total(self) -> int:
        return len(self.cases)

    def count(self, status: CaseStatus) -> int:
        return sum(1 for case in self.cases if case.status == status)

    @property
    def passed(self) -> int:
        return self.count(CaseStatus.OK)

    @property
    def failed(self) -> int:
        return self.count(CaseStatus.FAIL)

    @property
    def skipped(self) -> int:
        return self.count(CaseStatus.SKIP)

    @property
    def errored(self) -> int:
        return self.count(CaseStatus.ERROR)

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.errored == 0

    @property
    def summary(self) -> str:
        return (
            f"{self.total} cases: {self.passed} passed, {self.failed} failed, "
            f"{self.skipped} skipped, {self.errored} errors"
        )

    def add(self, case_id: str, status: CaseStatus, detail: str = "") -> CaseResult:
        case = CaseResult(id=case_id, status=status, detail=detail)
        self.cases.append(case)
        return case

    def sorted(self) -> "SuiteReport":
        return self.model_copy(update={"cases": sorted(self.cases, key=lambda c: c.id)})

    def merge(self, other: "SuiteReport") -> "SuiteReport":
        self.cases.extend(other.cases)
        self.extra.update(other.extra)
        return self

    def find(self, case_id: str) -> Optional[CaseResult]:
        for case in self.cases:
            if case.id == case_id:
                return case
        return None

    def to_json(self) -> str:
        payload = {
            "suite": self.suite,
            "instance": self.instance,
            "cases": [case.model_dump(mode="json") for case in self.cases],
            "summary": self.summary,
        }
        if self.extra:
            payload["extra"] = self.extra
        return json.dumps(payload, indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [case.line() for case in self.cases]
        lines.append(f"{self.suite} [{self.instance}] {self.summary}")
        return "\n".join(lines)
