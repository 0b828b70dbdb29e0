"""Per-transformation reports with explicit bound checking.

Every rewriting step returns a :class:`TransformReport` alongside the new
code. The report records the configuration that produced the run, the code
parameters before and after, and a list of :class:`BoundCheck` entries for
the guarantees the step claims. Checks marked ``required`` describe proved
invariants; a failed required check is a bug in this package, never a data
problem, and :func:`require_bounds` turns it into a :class:`BoundViolation`.
Non-required checks record measured constants for bounds whose additive
slack is implementation dependent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from .errors import BoundViolation
from .model import CodeParams

__all__ = ["BoundCheck", "TransformReport", "require_bounds"]


@dataclass(frozen=True)
class BoundCheck:
    """One named inequality (or equality) verified on an actual run."""

    expression: str
    satisfied: bool
    observed: Any = None
    limit: Any = None
    required: bool = True

    def as_dict(self) -> dict:
        return {
            "expression": self.expression,
            "satisfied": self.satisfied,
            "observed": self.observed,
            "limit": self.limit,
            "required": self.required,
        }


@dataclass(frozen=True)
class TransformReport:
    """Record of a single transformation run."""

    step: str
    config: dict = field(default_factory=dict)
    seed: Optional[int] = None
    params_before: Optional[CodeParams] = None
    params_after: Optional[CodeParams] = None
    bound_checks: tuple = ()
    notes: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "step": self.step,
            "config": self.config,
            "seed": self.seed,
            "params_before": self.params_before.as_dict() if self.params_before else None,
            "params_after": self.params_after.as_dict() if self.params_after else None,
            "bound_checks": [c.as_dict() for c in self.bound_checks],
            "notes": self.notes,
        }

    def check(self, expression: str) -> BoundCheck:
        for entry in self.bound_checks:
            if entry.expression == expression:
                return entry
        raise KeyError(expression)


def require_bounds(report: TransformReport) -> TransformReport:
    """Raise :class:`BoundViolation` if any required check failed."""

    failed = [c for c in report.bound_checks if c.required and not c.satisfied]
    if failed:
        raise BoundViolation(
            f"step {report.step!r} violated {len(failed)} proved bound(s): "
            + "; ".join(c.expression for c in failed),
            step=report.step,
            failed=[c.as_dict() for c in failed],
        )
    return report
