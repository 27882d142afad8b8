"""
Error hierarchy for weyl-toric
Every error knows the CLI exit code it maps to
"""

from typing import Any, Dict


class WeylToricError(Exception):
    """Base class for all library errors"""

    exit_code = 4
    kind = "error"

    def to_dict(self) -> Dict[str, Any]:
        """Convert to a structured error payload"""
        return {
            'error': self.kind,
            'message': str(self),
            'exit_code': self.exit_code,
        }


class InvalidInputError(WeylToricError):
    """Bad pair names, parameters, vectors or files"""

    exit_code = 2
    kind = "invalid_input"


class AssumptionViolation(InvalidInputError):
    """A documented precondition of an operation does not hold"""

    kind = "assumption_violation"


class PointOutsideCone(InvalidInputError):
    """A point passed to a face query is not in the cone"""

    kind = "point_outside_cone"


class NotAdmissibleError(InvalidInputError):
    """An affine Weyl element is not in Adm(mu)"""

    kind = "not_admissible"


class UnsupportedPairError(InvalidInputError):
    """The pair lacks the data an operation needs (e.g. a split root datum)"""

    kind = "unsupported_pair"


class ResourceLimitExceeded(WeylToricError):
    """A configured budget cap was reached before the answer was complete"""

    exit_code = 3
    kind = "budget_exceeded"

    def __init__(self, what: str, limit: int):
        super().__init__(f"{what} exceeded budget limit {limit}")
        self.what = what
        self.limit = limit


class InvariantViolation(WeylToricError):
    """An internal consistency check failed; this is a bug"""

    exit_code = 4
    kind = "invariant_violation"
