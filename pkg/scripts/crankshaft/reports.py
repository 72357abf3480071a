"""
Structured verification reports shared by identity checks and bijection verifiers
"""

import json
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional

PASS = "pass"
FAIL = "fail"


@dataclass
class CheckReport:
    """
    Outcome of one named check over a parameter range

    status is "fail" exactly when a counterexample is attached.
    """
    check_name: str
    params: Dict
    status: str = PASS
    counterexample: Optional[Dict] = None
    elapsed: float = 0.0
    details: Dict = field(default_factory=dict)

    def __post_init__(self):
        if (self.status == FAIL) != (self.counterexample is not None):
            raise ValueError(f"{self.check_name}: status {self.status} inconsistent with counterexample")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def fail(self, **counterexample) -> 'CheckReport':
        """
        Mark the report failed with the first counterexample found
        """
        self.status = FAIL
        self.counterexample = counterexample
        return self

    def to_json(self, timing: bool = False) -> Dict:
        """
        JSON form of the report; elapsed time is included only when timing is set
        """
        document = {
            "check": self.check_name,
            "params": _jsonable(self.params),
            "status": self.status,
            "counterexample": _jsonable(self.counterexample),
            "details": _jsonable(self.details),
        }
        if timing:
            document["elapsed"] = round(self.elapsed, 6)
        return document


def _jsonable(value):
    # objects from crankshaft.objects know how to serialise themselves
    if hasattr(value, 'to_json'):
        return value.to_json()
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def reports_to_json(reports: Iterable[CheckReport], timing: bool = False) -> str:
    return json.dumps([r.to_json(timing) for r in reports], indent=2)


def format_summary(reports: List[CheckReport]) -> str:
    """
    Human-readable summary of a batch of reports

    Args:
        reports: Reports in request order

    Returns:
        Multi-line summary text
    """
    lines = ["", "=" * 60, "crankshaft Verification Summary", "=" * 60]
    for report in reports:
        params = ", ".join(f"{k}={v}" for k, v in report.params.items())
        lines.append(f"  {report.check_name:28s} {report.status.upper():4s}  [{params}]  {report.elapsed:.2f}s")
        if report.counterexample is not None:
            lines.append(f"    counterexample: {json.dumps(_jsonable(report.counterexample))}")
    failed = sum(1 for r in reports if not r.passed)
    lines.append("-" * 60)
    lines.append(f"  {len(reports) - failed} passed, {failed} failed")
    lines.append("=" * 60)
    return "\n".join(lines)
