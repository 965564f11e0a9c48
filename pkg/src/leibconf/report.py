"""Pass/fail reports shared by all checkers."""

from __future__ import annotations

from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
UNDECIDED = "undecided"


@dataclass
class Failure:
    label: str      # which identity / which basis tuple
    residual: str   # pretty-printed nonzero residual


@dataclass
class Report:
    verdict: str
    failures: list[Failure] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.verdict == PASS

    @property
    def first_failure(self) -> Failure | None:
        return self.failures[0] if self.failures else None

    @staticmethod
    def passed(notes: list[str] | None = None) -> "Report":
        return Report(PASS, [], notes or [])

    @staticmethod
    def failed(failures: list[Failure], notes: list[str] | None = None) -> "Report":
        return Report(FAIL, failures, notes or [])


class PreconditionError(Exception):
    """A documented precondition of an operation does not hold."""

    def __init__(self, message: str, report: Report | None = None):
        super().__init__(message)
        self.report = report
