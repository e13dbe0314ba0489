"""A/D classification of phases with linear height below 2 and their critical exponents."""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional

from algebra.polynomial import BivariatePolynomial
from errors import MalformedNormalFormError, NotApplicableError
from geometry.newton import Weight
from restriction.conditions import ExponentPair, HalfPlaneLabel, weight_halfplane

logger = logging.getLogger(__name__)


class SingularityKind(str, Enum):
    A = "A"
    A_INF = "AInf"
    D = "D"
    D_INF = "DInf"


@dataclass(frozen=True)
class SingularityClass:
    kind: SingularityKind
    m: int
    n: Optional[int] = None

    @property
    def is_type_a(self) -> bool:
        return self.kind in (SingularityKind.A, SingularityKind.A_INF)

    @property
    def label(self) -> str:
        """A_{n-1}, D_{n+1}, A_inf or D_inf."""
        if self.kind is SingularityKind.A:
            return f"A{self.n - 1}"
        if self.kind is SingularityKind.D:
            return f"D{self.n + 1}"
        return "A_inf" if self.kind is SingularityKind.A_INF else "D_inf"


@dataclass(frozen=True)
class ExpectedInvariants:
    kappa: Weight
    kappa_la: Weight
    d: Fraction
    h: Fraction


def classify(analysis) -> SingularityClass:
    """
    Read the singularity type off the Taylor support of the adapted phase.

    A when (0, 2) is in the support, D when only (1, 2) is; n is the lowest pure
    y1 exponent and its absence gives the infinite types.

    Raises:
        NotApplicableError: If the phase is adapted or h_lin >= 2
        MalformedNormalFormError: If neither (0, 2) nor (1, 2) is in the support
    """
    if analysis.adapted:
        raise NotApplicableError("Classification needs a non-adapted phase", {"h": str(analysis.h)})
    if analysis.heights.h_lin >= 2:
        raise NotApplicableError(
            "Classification needs linear height below 2", {"h_lin": str(analysis.heights.h_lin)}
        )

    support = analysis.phi_a.support()
    m = int(analysis.m)
    pure = [a for a, b in support if b == 0]
    n = min(pure) if pure else None

    if (0, 2) in support:
        kind, minimum = SingularityKind.A, 2 * m + 1
    elif (1, 2) in support:
        kind, minimum = SingularityKind.D, 2 * m + 2
    else:
        raise MalformedNormalFormError(
            f"Adapted phase {analysis.phi_a.to_text()} has neither y2^2 nor y1*y2^2",
            {"support": sorted([a, b] for a, b in support)},
        )

    if n is None:
        kind = SingularityKind.A_INF if kind is SingularityKind.A else SingularityKind.D_INF
    elif n < minimum:
        raise MalformedNormalFormError(
            f"Pure y1 exponent {n} is below {minimum} for a {kind.value} singularity with m={m}", {"n": n, "m": m}
        )
    result = SingularityClass(kind, m, n)
    logger.info(f"Classified {analysis.phi.to_text()} as {result.label}")
    return result


def critical_exponent(c: SingularityClass, analysis=None) -> ExponentPair:
    """
    (1/(2m+2), 1/4) for type A, (1/(4m+4), 1/4) for type D.

    With an analysis, the point is checked to lie on both the kappa line and the
    edge line of the adapted principal face.
    """
    if c.is_type_a:
        q = ExponentPair(Fraction(1, 2 * c.m + 2), Fraction(1, 4))
    else:
        q = ExponentPair(Fraction(1, 4 * c.m + 4), Fraction(1, 4))
    if analysis is not None:
        off = lines_missing(analysis, q)
        if off:
            raise AssertionError(f"Critical exponent {q} is off the condition lines {off}")
    return q


def lines_missing(analysis, q: ExponentPair) -> List[str]:
    """Names of the binding condition lines (kappa and the adapted principal edge) not through q."""
    aug = analysis.augmented
    lines = [weight_halfplane(aug.kappa, aug.m, HalfPlaneLabel.KAPPA_LINE)]
    weight = aug.base.edge_weight(aug.la)
    if weight.is_finite:
        lines.append(weight_halfplane(weight, aug.m, HalfPlaneLabel.EDGE_LINE, aug.la))
    return [line.name for line in lines if not line.on_boundary(q)]


def expected_invariants(c: SingularityClass) -> ExpectedInvariants:
    """Closed-form kappa, adapted principal weight, d and h of an A or D normal form."""
    if c.n is None:
        raise NotApplicableError(f"{c.label} has no closed-form invariants")
    m, n = c.m, c.n
    if c.is_type_a:
        return ExpectedInvariants(
            kappa=Weight(Fraction(1, 2 * m), Fraction(1, 2)),
            kappa_la=Weight(Fraction(1, n), Fraction(1, 2)),
            d=Fraction(2 * m, m + 1),
            h=Fraction(2 * n, n + 2),
        )
    return ExpectedInvariants(
        kappa=Weight(Fraction(1, 2 * m + 1), Fraction(m, 2 * m + 1)),
        kappa_la=Weight(Fraction(1, n), Fraction(n - 1, 2 * n)),
        d=Fraction(2 * m + 1, m + 1),
        h=Fraction(2 * n, n + 1),
    )


def _parabola_square(m: int) -> BivariatePolynomial:
    x1, x2 = BivariatePolynomial.x1(), BivariatePolynomial.x2()
    return (x2 - x1**m) ** 2


def a_normal_form(m: int, n: Optional[int] = None) -> BivariatePolynomial:
    """(x2 - x1^m)^2 + x1^n; n=None gives the A_inf form."""
    phase = _parabola_square(m)
    return phase if n is None else phase + BivariatePolynomial.monomial(1, n, 0)


def d_normal_form(m: int, n: Optional[int] = None) -> BivariatePolynomial:
    """x1 (x2 - x1^m)^2 + x1^n; n=None gives the D_inf form."""
    phase = BivariatePolynomial.x1() * _parabola_square(m)
    return phase if n is None else phase + BivariatePolynomial.monomial(1, n, 0)
