"""Structured verification reports.

Every statement verifier produces a Report: which statement was checked,
how each hypothesis fared, the two computed sets being compared, the
conclusion verdict, and an overall status.  Hypothesis outcomes are
four-valued because some checks are certified exactly while others rest
on finite probe sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import InputError

STATEMENT_IDS = (
    "Theorem1",
    "Corollary1",
    "Example9",
    "Theorem2",
    "KTRangeI",
    "KTRangeII",
    "Example2",
    "Lemma2",
    "RintIdentity",
    "BrezisHaraux",
)

STATUSES = ("Verified", "Refuted", "HypothesisFailed", "Unknown")

# hypothesis outcomes: "pass" is exact, "probe" passed a finite sweep,
# "fail" is exact failure, "unknown" means the checker could not decide
HYP_OUTCOMES = ("pass", "probe", "fail", "unknown")


@dataclass(frozen=True)
class HypothesisResult:
    name: str
    outcome: str
    detail: str = ""

    def __post_init__(self):
        if self.outcome not in HYP_OUTCOMES:
            raise InputError(f"unknown hypothesis outcome {self.outcome!r}")

    @property
    def ok(self) -> bool:
        return self.outcome in ("pass", "probe")


@dataclass(frozen=True)
class Report:
    statement_id: str
    hypothesis_results: tuple = ()
    lhs_set: Optional[object] = None
    rhs_set: Optional[object] = None
    conclusion: Optional[object] = None
    witnesses: tuple = ()
    status: str = "Unknown"
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.statement_id not in STATEMENT_IDS:
            raise InputError(f"unknown statement id {self.statement_id!r}")
        if self.status not in STATUSES:
            raise InputError(f"unknown report status {self.status!r}")
        object.__setattr__(self, "hypothesis_results", tuple(self.hypothesis_results))
        object.__setattr__(self, "witnesses", tuple(self.witnesses))

    @property
    def hypotheses_ok(self) -> bool:
        return all(h.ok for h in self.hypothesis_results)


def derive_status(hypotheses, conclusion_holds: Optional[bool]) -> str:
    """Overall status from hypothesis outcomes and the conclusion verdict.

    A failed hypothesis wins over everything: the statement simply does not
    apply, so no claim is made about the conclusion.  An undecidable
    hypothesis caps the status at Unknown.  Probe-passed hypotheses are
    treated as satisfied; the per-hypothesis detail keeps the distinction
    visible in the report.
    """
    outcomes = [h.outcome for h in hypotheses]
    if "fail" in outcomes:
        return "HypothesisFailed"
    if "unknown" in outcomes or conclusion_holds is None:
        return "Unknown"
    return "Verified" if conclusion_holds else "Refuted"
