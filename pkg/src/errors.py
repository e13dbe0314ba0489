"""Error hierarchy for the analyzer.

Every error carries a stable machine-readable ``code`` and a ``details`` dict so the
CLI can emit it as JSON with exit status 2.
"""

from typing import Any, Dict, List, Optional, Tuple
from fractions import Fraction


class RestriktError(ValueError):
    """Base class for all analyzer errors."""

    code = "RestriktError"

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        """Render the error as a JSON-ready dictionary."""
        return {"error": self.code, "message": self.message, "details": self.details}


class ConfigError(RestriktError):
    code = "ConfigError"


class PolynomialSyntaxError(RestriktError):
    """Raised when a phase expression cannot be parsed."""

    code = "SyntaxError"

    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}", {"position": position, "text": text})
        self.position = position


class NegativeExponentError(PolynomialSyntaxError):
    code = "NegativeExponent"


class OriginConditionError(RestriktError):
    """Raised when a phase violates phi(0) = 0, grad phi(0) = 0 or is identically zero."""

    def __init__(self, code: str, message: str):
        super().__init__(message, {"condition": code})
        self.code = code


class EmptySupportError(RestriktError):
    code = "EmptySupport"


class FaceNotOnPolyhedronError(RestriktError):
    code = "FaceNotOnPolyhedron"


class CalledOnAdaptedError(RestriktError):
    code = "CalledOnAdapted"


class IterationCapReachedError(RestriktError):
    """Raised when the shear iteration does not terminate within the cap.

    The partial trace is attached so callers can report how far it got.
    """

    code = "IterationCapReached"

    def __init__(self, max_iter: int, trace: Any = None):
        super().__init__(f"Adapted coordinates not reached after {max_iter} shear steps", {"max_iter": max_iter})
        self.trace = trace


class IrrationalRootEncounteredError(RestriktError):
    """A witness root with excess multiplicity exists but is irrational."""

    code = "IrrationalRootEncountered"

    def __init__(self, factor: str, multiplicity: int, intervals: List[Tuple[Fraction, Fraction]]):
        brackets = [[f"{lo.numerator}/{lo.denominator}", f"{hi.numerator}/{hi.denominator}"] for lo, hi in intervals]
        super().__init__(
            f"Irrational root of {factor} with multiplicity {multiplicity}",
            {"factor": factor, "multiplicity": multiplicity, "intervals": brackets},
        )
        self.intervals = intervals


class CalledOnAdaptedInputError(RestriktError):
    code = "CalledOnAdaptedInput"


class NonpositiveRatioError(RestriktError):
    code = "NonpositiveRatio"


class DegenerateIntersectionError(RestriktError):
    code = "DegenerateIntersection"


class NotApplicableError(RestriktError):
    code = "NotApplicable"


class MalformedNormalFormError(RestriktError):
    code = "MalformedNormalForm"


class HypothesisUnverifiedError(RestriktError):
    code = "HypothesisUnverified"


class WeightNotSupportingError(RestriktError):
    code = "WeightNotSupporting"


class InconsistentAugmentationError(RestriktError):
    """Raised when the original weight cuts the adapted polyhedron right of its principal face."""

    code = "InconsistentAugmentation"
