"""Origin conditions for phases: phi(0) = 0, grad phi(0) = 0, finite type."""

import logging
from dataclasses import dataclass, field
from typing import List

from algebra.polynomial import BivariatePolynomial
from errors import OriginConditionError

logger = logging.getLogger(__name__)

NONZERO_CONSTANT = "NonzeroConstant"
NONZERO_GRADIENT = "NonzeroGradient"
IDENTICALLY_ZERO = "IdenticallyZero"


@dataclass(frozen=True)
class ValidationReport:
    accepted: bool
    errors: List[str] = field(default_factory=list)

    def raise_if_rejected(self) -> None:
        if not self.accepted:
            code = self.errors[0]
            raise OriginConditionError(code, _MESSAGES[code])


_MESSAGES = {
    NONZERO_CONSTANT: "Phase must vanish at the origin",
    NONZERO_GRADIENT: "Phase gradient at the origin must vanish (use --normalize-gradient)",
    IDENTICALLY_ZERO: "Phase is identically zero and therefore not of finite type",
}


def check_origin_conditions(p: BivariatePolynomial) -> ValidationReport:
    """
    Check that a polynomial phase is admissible at the origin.

    A nonzero polynomial is automatically of finite type at 0, so the only
    failure modes are a constant term, a linear term, or the zero polynomial.
    """
    errors: List[str] = []
    if p.is_zero():
        errors.append(IDENTICALLY_ZERO)
    if p.constant_term() != 0:
        errors.append(NONZERO_CONSTANT)
    if any(g != 0 for g in p.gradient_at_origin()):
        errors.append(NONZERO_GRADIENT)
    if errors:
        logger.debug(f"Origin conditions rejected {p.to_text()}: {errors}")
    return ValidationReport(accepted=not errors, errors=errors)


def require_origin_conditions(p: BivariatePolynomial) -> BivariatePolynomial:
    check_origin_conditions(p).raise_if_rejected()
    return p


def normalize_gradient(p: BivariatePolynomial) -> BivariatePolynomial:
    """
    Remove the linear part of a phase with p(0) = 0.

    Replacing phi(x) by phi(x) - x . grad phi(0) only translates the frequency
    variable, so restriction estimates are unchanged.

    Raises:
        OriginConditionError: If p(0) != 0
    """
    if p.constant_term() != 0:
        raise OriginConditionError(NONZERO_CONSTANT, _MESSAGES[NONZERO_CONSTANT])
    return p - p.linear_part()
