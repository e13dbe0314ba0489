"""Knapp boxes: sampling |phi| on the sheared boxes D_eps and the exact exponent comparison."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from errors import NotApplicableError, WeightNotSupportingError
from geometry.augmented import AugmentedPolyhedron
from geometry.newton import Weight
from lab.decay import Verdict

logger = logging.getLogger(__name__)

GRID = 201
DEFAULT_EPS_EXPONENTS = tuple(range(1, 21))
RATIO_BOUND = 10.0


@dataclass(frozen=True)
class ExponentComparison:
    """(1+m) k1 x + y against (k1 + k2)/2 at q = (x, y)."""

    q: Tuple[Fraction, Fraction]
    lhs: Fraction
    rhs: Fraction
    relation: str


@dataclass(frozen=True)
class KnappReport:
    weight: Weight
    eps_grid: Tuple[float, ...]
    sup_phi_over_eps: Tuple[float, ...]
    max_ratio: float
    bound: float
    verdict: Verdict
    exponent_check: Optional[ExponentComparison] = None


def require_supporting(aug: AugmentedPolyhedron, weight: Weight) -> None:
    """
    A weight supports the augmented polyhedron when it is >= 1 on every pivot vertex with
    equality on one, and the ray above the anchor points into its half-plane.

    Raises:
        WeightNotSupportingError: Otherwise
    """
    if not weight.is_finite:
        raise WeightNotSupportingError(f"Weight {weight} is not finite")
    values = [weight.dot(v) for v in aug.pivot_vertices()]
    direction = aug.ray_direction()
    ray_ok = weight.k1 * direction[0] + weight.k2 * direction[1] >= 0
    if min(values) != 1 or not ray_ok:
        raise WeightNotSupportingError(
            f"Weight {weight} does not support the augmented polyhedron",
            {"weight": [str(weight.k1), str(weight.k2)], "vertex_values": [str(v) for v in values]},
        )


def compare_exponents(weight: Weight, m: Fraction, q: Tuple[Fraction, Fraction]) -> ExponentComparison:
    x, y = Fraction(q[0]), Fraction(q[1])
    lhs = (1 + m) * weight.k1 * x + y
    rhs = (weight.k1 + weight.k2) / 2
    relation = "<" if lhs < rhs else ("=" if lhs == rhs else ">")
    return ExponentComparison((x, y), lhs, rhs, relation)


def knapp_box_check(
    analysis,
    weight: Optional[Weight] = None,
    eps_exponents: Sequence[int] = DEFAULT_EPS_EXPONENTS,
    q: Optional[Tuple[Fraction, Fraction]] = None,
    grid: int = GRID,
    bound: float = RATIO_BOUND,
) -> KnappReport:
    """
    Sample sup |phi|/eps over D_eps = {|y1| <= eps^k1, |y2| <= eps^k2}, x = (y1, y2 + psi(y1)).

    The phase is the analysis' working phase, so psi is the computed shear and
    ``weight`` defaults to kappa. PASS iff the ratio stays below ``bound``.

    Raises:
        NotApplicableError: For adapted phases
        WeightNotSupportingError: If the weight does not support the augmented polyhedron
    """
    if analysis.adapted:
        raise NotApplicableError("Knapp boxes need a non-adapted phase")
    aug = analysis.augmented
    weight = weight or aug.kappa
    require_supporting(aug, weight)

    phi = analysis.oriented
    psi = analysis.trace.psi.psi
    k1, k2 = float(weight.k1), float(weight.k2)
    unit = np.linspace(-1.0, 1.0, grid)

    eps_values: List[float] = []
    ratios: List[float] = []
    for k in eps_exponents:
        eps = 2.0 ** (-k)
        y1 = (eps**k1 * unit)[:, None]
        y2 = (eps**k2 * unit)[None, :]
        x2 = y2 + psi.evaluate_array(y1, 0.0)
        ratio = float(np.abs(phi.evaluate_array(y1, x2)).max() / eps)
        eps_values.append(eps)
        ratios.append(ratio)

    max_ratio = max(ratios) if ratios else 0.0
    verdict = Verdict.PASS if max_ratio <= bound else Verdict.FAIL
    comparison = compare_exponents(weight, aug.m, q) if q is not None else None
    logger.info(f"Knapp boxes for weight {weight}: max sup|phi|/eps = {max_ratio:.4g} ({verdict.value})")
    return KnappReport(weight, tuple(eps_values), tuple(ratios), max_ratio, bound, verdict, comparison)


def knapp_sweep(analysis, **kwargs) -> List[KnappReport]:
    """One report per finite supporting weight of the augmented polyhedron."""
    if analysis.adapted:
        raise NotApplicableError("Knapp boxes need a non-adapted phase")
    return [knapp_box_check(analysis, weight, **kwargs) for weight in analysis.augmented.supporting_weights()]
