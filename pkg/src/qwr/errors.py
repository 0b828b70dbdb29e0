"""Domain errors shared across the toolkit.

Every error carries a machine-readable payload so the CLI can emit a JSON
object on stderr and exit with the domain-error status.
"""

from __future__ import annotations

from typing import Any


class QwrError(Exception):
    """Base class for all toolkit domain errors."""

    code = "error"

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.details = details

    def payload(self) -> dict:
        body: dict = {"error": self.code, "message": str(self)}
        if self.details:
            body["details"] = self.details
        return body


class DimensionMismatch(QwrError):
    code = "dimension-mismatch"


class NotSorted(QwrError):
    code = "not-sorted"


class IndexOutOfRange(QwrError):
    code = "index-out-of-range"


class FormatError(QwrError):
    code = "format"


class CommutationViolation(QwrError):
    """An X row and a Z row overlap on an odd number of qubits."""

    code = "commutation-violation"


class NotReasonable(QwrError):
    """A Z-stabilizer has a support component whose product is not a stabilizer."""

    code = "not-reasonable"


class OddCrossingParity(QwrError):
    """An X-stabilizer crosses a chosen qubit set an odd number of times."""

    code = "odd-crossing-parity"


class NontrivialHomology(QwrError):
    code = "nontrivial-homology"


class BudgetExceeded(QwrError):
    """Search budget ran out; carries the best certified lower bound."""

    code = "budget-exceeded"

    def __init__(self, message: str, lower_bound: int = 0, **details: Any):
        super().__init__(message, lower_bound=lower_bound, **details)
        self.lower_bound = lower_bound


class RetriesExhausted(QwrError):
    code = "retries-exhausted"


class HeightSearchFailed(QwrError):
    code = "height-search-failed"


class AugmentationFailed(QwrError):
    """Expansion target not reached; carries the best value achieved."""

    code = "augmentation-failed"

    def __init__(self, message: str, best: Any = None, **details: Any):
        super().__init__(message, best=str(best), **details)
        self.best = best


class BoundViolation(QwrError):
    """A proved transformation bound failed on an actual run (a bug, not data)."""

    code = "bound-violation"
