"""Necessary conditions for mixed-norm restriction estimates in the (1/p1', 1/p3')-plane."""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import List, NamedTuple, Optional, Tuple

from algebra.numbers import format_float
from errors import DegenerateIntersectionError, NotApplicableError
from geometry.augmented import legendre_transform, restriction_height
from geometry.newton import Weight

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


class ExponentPair(NamedTuple):
    """A point (1/p1', 1/p3')."""

    inv_p1p: Fraction
    inv_p3p: Fraction

    @classmethod
    def of(cls, x, y) -> "ExponentPair":
        return cls(Fraction(x), Fraction(y))

    def in_range(self) -> bool:
        return 0 <= self.inv_p1p <= HALF and 0 <= self.inv_p3p <= HALF


class HalfPlaneLabel(str, Enum):
    KAPPA_LINE = "KappaLine"
    EDGE_LINE = "EdgeLine"
    ADAPTED_LINE = "AdaptedLine"
    AXIS_P1 = "AxisP1"
    AXIS_P3 = "AxisP3"


@dataclass(frozen=True)
class HalfPlane:
    """The condition a*x + b*y <= c."""

    a: Fraction
    b: Fraction
    c: Fraction
    label: HalfPlaneLabel
    edge: Optional[int] = None

    def value(self, q: Tuple[Fraction, Fraction]) -> Fraction:
        return self.a * q[0] + self.b * q[1]

    def contains(self, q: Tuple[Fraction, Fraction]) -> bool:
        return self.value(q) <= self.c

    def on_boundary(self, q: Tuple[Fraction, Fraction]) -> bool:
        return self.value(q) == self.c

    @property
    def name(self) -> str:
        return f"{self.label.value}({self.edge})" if self.edge is not None else self.label.value


class PTildeExclusion(str, Enum):
    H_EQUALS_ONE = "HEqualsOne"
    NU_EQUALS_ONE = "NuEqualsOne"


@dataclass(frozen=True)
class AdmissiblePolygon:
    vertices: Tuple[ExponentPair, ...]
    ptilde_included: bool
    ptilde_excluded_reason: Optional[PTildeExclusion]
    halfplanes: Tuple[HalfPlane, ...] = ()
    used_fallback: bool = False

    @property
    def ptilde(self) -> ExponentPair:
        return self.vertices[-1]

    def csv_rows(self) -> List[List[str]]:
        labels = ["O", "P"] + [f"P_{i}" for i in range(len(self.vertices) - 3)] + ["P_tilde"]
        return [[format_float(v.inv_p1p), format_float(v.inv_p3p), label] for v, label in zip(self.vertices, labels)]


class ProofStatus(str, Enum):
    YES = "Yes"
    NO = "No"
    OPEN_ENDPOINT = "OpenEndpoint"
    OUTSIDE_THEOREM = "OutsideTheorem"


@dataclass(frozen=True)
class AdmissibilityAnswer:
    necessary: bool
    proven: ProofStatus
    violated: Tuple[str, ...] = field(default_factory=tuple)


def weight_halfplane(weight: Weight, m: Fraction, label: HalfPlaneLabel, edge: Optional[int] = None) -> HalfPlane:
    """Knapp condition (1+m)k1*x + y <= (k1 + k2)/2 of a finite weight."""
    return HalfPlane((1 + m) * weight.k1, Fraction(1), (weight.k1 + weight.k2) / 2, label, edge)


def condition_halfplanes(analysis) -> List[HalfPlane]:
    """
    The half-planes cutting out the necessary region.

    Adapted phases give the single condition (1/h)x + y <= 1/(2h); otherwise the
    kappa-line and the edge lines l0..la. Edge lines beyond la are implied.
    Both cases add the axis bounds x <= 1/2 and y <= 1/(2h).
    """
    h = analysis.h
    axes = [
        HalfPlane(Fraction(1), Fraction(0), HALF, HalfPlaneLabel.AXIS_P1),
        HalfPlane(Fraction(0), Fraction(1), 1 / (2 * h), HalfPlaneLabel.AXIS_P3),
    ]
    if analysis.adapted:
        return [HalfPlane(1 / h, Fraction(1), 1 / (2 * h), HalfPlaneLabel.ADAPTED_LINE)] + axes

    aug = analysis.augmented
    m = aug.m
    planes = [weight_halfplane(aug.kappa, m, HalfPlaneLabel.KAPPA_LINE)]
    for l in range(aug.l0, aug.la + 1):
        weight = aug.base.edge_weight(l)
        if weight.is_finite:
            planes.append(weight_halfplane(weight, m, HalfPlaneLabel.EDGE_LINE, l))
    return planes + axes


def _line_intersection(first: HalfPlane, second: HalfPlane) -> Optional[ExponentPair]:
    det = first.a * second.b - second.a * first.b
    if det == 0:
        return None
    x = (first.c * second.b - second.c * first.b) / det
    y = (first.a * second.c - second.a * first.c) / det
    return ExponentPair(x, y)


def _order_from_origin(points: List[ExponentPair]) -> List[ExponentPair]:
    """Counterclockwise order of a convex polygon in the first quadrant with vertex O."""
    origin = ExponentPair(Fraction(0), Fraction(0))
    rest = [p for p in points if p != origin]
    rest.sort(key=lambda p: (p.inv_p3p / (p.inv_p1p + p.inv_p3p), -(p.inv_p1p + p.inv_p3p)))
    return [origin] + rest


def halfplane_intersection_polygon(halfplanes: List[HalfPlane]) -> List[ExponentPair]:
    """Brute-force polygon: feasible pairwise intersections of all boundary lines with x, y >= 0."""
    bounds = list(halfplanes) + [
        HalfPlane(Fraction(-1), Fraction(0), Fraction(0), HalfPlaneLabel.AXIS_P1),
        HalfPlane(Fraction(0), Fraction(-1), Fraction(0), HalfPlaneLabel.AXIS_P3),
    ]
    vertices = set()
    for first, second in combinations(bounds, 2):
        point = _line_intersection(first, second)
        if point is not None and all(plane.contains(point) for plane in bounds):
            vertices.add(point)
    return _order_from_origin(list(vertices))


def _ptilde_status(analysis) -> Tuple[bool, Optional[PTildeExclusion]]:
    if analysis.h == 1:
        return False, PTildeExclusion.H_EQUALS_ONE
    if analysis.nu == 1:
        return False, PTildeExclusion.NU_EQUALS_ONE
    return True, None


def _formula_vertices(analysis) -> List[ExponentPair]:
    """Closed-form vertices P_l, l = l0..la, from consecutive supporting weights."""
    aug = analysis.augmented
    m = aug.m
    vertices = []
    previous = aug.kappa
    for l in range(aug.l0, aug.la + 1):
        current = aug.base.edge_weight(l)
        if not current.is_finite:
            break
        delta1 = current.k1 - previous.k1
        delta2 = current.k2 - previous.k2
        if delta1 == 0:
            raise DegenerateIntersectionError(f"Condition lines {l - 1} and {l} are parallel", {"edge": l})
        ratio = delta2 / delta1
        vertices.append(ExponentPair(HALF * (1 + ratio) / (m + 1), HALF * (previous.k2 - previous.k1 * ratio)))
        previous = current
    return vertices


def _dedupe(points: List[ExponentPair]) -> List[ExponentPair]:
    result: List[ExponentPair] = []
    for point in points:
        if not result or result[-1] != point:
            result.append(point)
    return result


def admissible_polygon(analysis) -> AdmissiblePolygon:
    """
    The polygon O, P, P_l0, ..., P_la, P~ of necessary exponents.

    Vertices come from the closed-form formulas; parallel consecutive conditions
    fall back to the brute-force half-plane intersection.
    """
    halfplanes = condition_halfplanes(analysis)
    included, reason = _ptilde_status(analysis)
    origin = ExponentPair(Fraction(0), Fraction(0))
    p = ExponentPair(HALF, Fraction(0))
    ptilde = ExponentPair(Fraction(0), 1 / (2 * analysis.h))

    if analysis.adapted:
        vertices = [origin, p, ptilde]
        return AdmissiblePolygon(tuple(vertices), included, reason, tuple(halfplanes))

    try:
        vertices = _dedupe([origin, p] + _formula_vertices(analysis) + [ptilde])
        fallback = False
    except DegenerateIntersectionError as e:
        logger.warning(f"Falling back to half-plane intersection: {e.message}")
        vertices = halfplane_intersection_polygon(halfplanes)
        fallback = True
    return AdmissiblePolygon(tuple(vertices), included, reason, tuple(halfplanes), fallback)


def is_admissible(analysis, q: ExponentPair) -> AdmissibilityAnswer:
    """
    Check q against the necessary conditions and report whether sufficiency is known.

    OutsideTheorem marks non-adapted phases with h_lin >= 2, where sufficiency is open.
    """
    q = ExponentPair.of(*q)
    violated = tuple(plane.name for plane in condition_halfplanes(analysis) if not plane.contains(q))
    necessary = not violated and q.inv_p1p >= 0 and q.inv_p3p >= 0
    if not necessary:
        return AdmissibilityAnswer(False, ProofStatus.NO, violated)
    included, _ = _ptilde_status(analysis)
    if not included and q == ExponentPair(Fraction(0), 1 / (2 * analysis.h)):
        return AdmissibilityAnswer(True, ProofStatus.OPEN_ENDPOINT)
    if not analysis.adapted and analysis.heights.h_lin >= 2:
        return AdmissibilityAnswer(True, ProofStatus.OUTSIDE_THEOREM)
    return AdmissibilityAnswer(True, ProofStatus.YES)


def legendre_condition(analysis, q: ExponentPair) -> bool:
    """
    y <= -1/2 * L(K)[(2 + 2m)x - 1], the Legendre form of all Knapp conditions.

    Raises:
        NotApplicableError: For adapted phases, which have no K function
    """
    if analysis.adapted:
        raise NotApplicableError("Legendre condition needs a non-adapted phase")
    x, y = Fraction(q[0]), Fraction(q[1])
    w = (2 + 2 * analysis.augmented.m) * x - 1
    return y <= -legendre_transform(analysis.kfunction, w) / 2


def diagonal_threshold(analysis, r: Fraction = Fraction(1)) -> Tuple[Fraction, ExponentPair]:
    """
    The threshold p3' = 2(1 + h^res_r) on the ray p1' = r*p3' and the boundary point it gives.

    Raises:
        NotApplicableError: For adapted phases
    """
    if analysis.adapted:
        raise NotApplicableError("Restriction height needs a non-adapted phase")
    r = Fraction(r)
    hres = restriction_height(analysis.augmented, analysis.d, r)
    p3 = 2 * (1 + hres.value)
    return p3, ExponentPair(1 / (r * p3), 1 / p3)


def known_sufficient_regions(analysis, diagonal_p3: Optional[Fraction] = None) -> List[ExponentPair]:
    """Anchors of the known sufficient sub-regions: (1/2, 0), (0, 1/(2h)) and an optional diagonal point."""
    anchors = [ExponentPair(HALF, Fraction(0)), ExponentPair(Fraction(0), 1 / (2 * analysis.h))]
    if diagonal_p3 is not None:
        anchors.append(ExponentPair(1 / Fraction(diagonal_p3), 1 / Fraction(diagonal_p3)))
    return anchors


def round_exponent_pair(x: float, y: float, max_denominator: int = 10**6) -> Tuple[ExponentPair, float]:
    """Round a float point to rationals and report the largest rounding error."""
    q = ExponentPair(Fraction(x).limit_denominator(max_denominator), Fraction(y).limit_denominator(max_denominator))
    error = max(abs(float(q.inv_p1p) - x), abs(float(q.inv_p3p) - y))
    if error:
        logger.info(f"Rounded ({x}, {y}) to ({q.inv_p1p}, {q.inv_p3p}), error {error:.3g}")
    return q, error
