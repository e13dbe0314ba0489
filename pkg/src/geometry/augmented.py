"""Augmented Newton polyhedron, its supporting-line function K and restriction heights."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from algebra.numbers import INF, ExtRational, format_float
from algebra.polynomial import LatticePoint
from errors import CalledOnAdaptedInputError, InconsistentAugmentationError, NonpositiveRatioError
from geometry.newton import NewtonPolyhedron, Weight, principal_face

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AugmentedPolyhedron:
    """
    Hull of the adapted polyhedron and the ray of the kappa-line above the anchor.

    Edges l0..n(+1) of ``base`` are edges of the augmented polyhedron; everything
    left of the anchor is replaced by the ray with weight ``kappa``.
    """

    base: NewtonPolyhedron
    kappa: Weight
    anchor: LatticePoint
    l0: int
    la: int
    anchor_on_kappa_line: bool

    @property
    def m(self) -> Fraction:
        return self.kappa.slope()

    def pivot_vertices(self) -> List[LatticePoint]:
        """Vertices l0-1..n: the anchor followed by the base vertices to its right."""
        return list(self.base.vertices[self.l0 - 1 :])

    def ray_direction(self) -> Tuple[Fraction, Fraction]:
        return -self.kappa.k2, self.kappa.k1

    def supporting_weights(self) -> List[Weight]:
        """Edge weights of the augmented polyhedron, kappa first; infinite ones skipped."""
        weights = [self.kappa]
        for l in range(self.l0, self.base.n + 2):
            weight = self.base.edge_weight(l)
            if weight.is_finite:
                weights.append(weight)
        return weights

    def contains(self, t: Tuple[Fraction, Fraction]) -> bool:
        """Exact membership: above the kappa-line and every edge line l >= l0."""
        if self.kappa.dot(t) < 1 or t[1] < self.base.vertices[-1].t2:
            return False
        for l in range(self.l0, self.base.n + 1):
            if self.base.edge_weight(l).dot(t) < 1:
                return False
        return True

    def contains_base(self) -> bool:
        return all(self.contains(v) for v in self.base.vertices)


@dataclass(frozen=True)
class KFunction:
    """
    Supporting-line map u -> K(u) of the augmented polyhedron on [u_min, kappa1].

    Below u_min K is +inf, which happens exactly when the horizontal edge lies on
    the t1-axis.
    """

    u_min: Fraction
    u_max: Fraction
    breakpoints: Tuple[Tuple[Fraction, Fraction], ...]
    pivots: Tuple[LatticePoint, ...]
    ray_slope: Fraction
    infinite_below: bool

    def evaluate(self, u: Fraction) -> ExtRational:
        u = Fraction(u)
        if u < 0 or u > self.u_max:
            raise ValueError(f"K is defined on [0, {self.u_max}], got {u}")
        value = u * self.ray_slope
        for a, b in self.pivots:
            if b == 0:
                if u * a < 1:
                    return INF
                continue
            value = max(value, (1 - u * a) / b)
        return value

    def evaluate_array(self, u: np.ndarray) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        value = u * float(self.ray_slope)
        for a, b in self.pivots:
            if b == 0:
                value = np.where(u * a < 1 - 1e-12, np.inf, value)
            else:
                value = np.maximum(value, (1 - u * a) / b)
        return value

    def is_convex(self) -> bool:
        """Slopes between consecutive breakpoints are non-decreasing and non-positive."""
        slopes = [
            (k_next - k_prev) / (u_next - u_prev)
            for (u_prev, k_prev), (u_next, k_next) in zip(self.breakpoints, self.breakpoints[1:])
        ]
        return all(s <= 0 for s in slopes) and all(a <= b for a, b in zip(slopes, slopes[1:]))


@dataclass(frozen=True)
class RestrictionHeight:
    r: Fraction
    value: Fraction
    argmax_label: str


def _pivot_index(base: NewtonPolyhedron, m: Fraction) -> int:
    slopes = base.slopes()
    return next(l for l in range(1, base.n + 2) if slopes[l] > m)


def build_augmented(base: NewtonPolyhedron, kappa: Weight) -> AugmentedPolyhedron:
    """
    Build the augmented polyhedron from the adapted polyhedron and the original weight.

    Args:
        base: Newton polyhedron of the adapted phase
        kappa: Principal weight of the phase in its original coordinates

    Raises:
        CalledOnAdaptedInputError: If the weight does not come from a non-adapted phase
        InconsistentAugmentationError: If the pivot edge lies right of the principal face
    """
    m = kappa.slope()
    if not kappa.is_finite or m is INF or m <= 0:
        raise CalledOnAdaptedInputError(f"Weight {kappa} is not the compact principal weight of a non-adapted phase")
    info = principal_face(base)
    if info.d == kappa.distance():
        raise CalledOnAdaptedInputError("Adapted phase: Newton distance equals height, no augmentation needed")

    l0 = _pivot_index(base, m)
    anchor = base.vertices[l0 - 1]
    # a vertex principal face at index v is associated with edge v, the edge to its left
    la = info.index
    if la < l0:
        raise InconsistentAugmentationError(
            f"Pivot edge {l0} of slope above {m} lies right of the principal face at index {la}",
            {"l0": l0, "la": la, "kappa": str(kappa)},
        )
    on_line = kappa.dot(anchor) == 1
    if not on_line:
        logger.warning(f"Anchor {tuple(anchor)} is not on the kappa-line {kappa}")
    return AugmentedPolyhedron(base, kappa, anchor, l0, la, on_line)


def k_function(aug: AugmentedPolyhedron) -> KFunction:
    """
    The supporting-line function of the augmented polyhedron.

    Breakpoints are the finite edge weights of index >= l0 together with kappa,
    sorted by their first coordinate.
    """
    pivots = tuple(aug.pivot_vertices())
    on_axis = [a for a, b in pivots if b == 0]
    u_min = Fraction(1, on_axis[0]) if on_axis else Fraction(0)
    points = {(w.k1, w.k2) for w in aug.supporting_weights()}
    breakpoints = tuple(sorted(points))
    return KFunction(
        u_min=u_min,
        u_max=aug.kappa.k1,
        breakpoints=breakpoints,
        pivots=pivots,
        ray_slope=aug.m,
        infinite_below=bool(on_axis),
    )


def legendre_transform(k: KFunction, w: Fraction) -> Fraction:
    """
    L(K)[w] = sup over u of (w*u - K(u)).

    The objective is concave and piecewise linear, so the supremum is attained at
    a breakpoint; the +inf region never contributes.
    """
    w = Fraction(w)
    return max(w * u - value for u, value in k.breakpoints)


def legendre_transform_grid(k: KFunction, w: float, step: float = 1e-4) -> float:
    """Brute-force supremum of w*u - K(u) on a uniform grid of the finite domain."""
    lo, hi = float(k.u_min), float(k.u_max)
    count = max(int(np.ceil((hi - lo) / step)), 1) + 1
    # breakpoints are added so the grid sup is attained exactly
    u = np.union1d(np.linspace(lo, hi, count), [float(b) for b, _ in k.breakpoints])
    return float(np.max(w * u - k.evaluate_array(u)))


def k_function_csv_rows(k: KFunction) -> List[List[str]]:
    return [[format_float(u), format_float(value)] for u, value in k.breakpoints]


def restriction_height(aug: AugmentedPolyhedron, d: Fraction, r: Fraction) -> RestrictionHeight:
    """
    h^res_r = max(d + 1/r - 1, h^l_r for l >= l0), h^l_r = ((1+m)k1 + r)/(r(k1 + k2)) - 1.

    A horizontal edge on the t1-axis contributes -1.

    Raises:
        NonpositiveRatioError: If r <= 0
    """
    r = Fraction(r)
    if r <= 0:
        raise NonpositiveRatioError(f"Ratio r must be positive, got {r}", {"r": str(r)})
    m = aug.m
    best = RestrictionHeight(r, d + 1 / r - 1, "kappa")
    for l in range(aug.l0, aug.base.n + 2):
        weight = aug.base.edge_weight(l)
        if weight.k2 is INF:
            value = Fraction(-1)
        else:
            value = ((1 + m) * weight.k1 + r) / (r * (weight.k1 + weight.k2)) - 1
        if value > best.value:
            best = RestrictionHeight(r, value, f"edge:{l}")
    return best


def _boundary_pieces(aug: AugmentedPolyhedron):
    """Boundary of the augmented polyhedron as (start, direction, is_ray) pieces."""
    pivots = aug.pivot_vertices()
    pieces = [(pivots[0], aug.ray_direction(), True)]
    for start, end in zip(pivots, pivots[1:]):
        pieces.append((start, (end.t1 - start.t1, end.t2 - start.t2), False))
    pieces.append((pivots[-1], (Fraction(1), Fraction(0)), True))
    return pieces


def restriction_height_geometric(aug: AugmentedPolyhedron, r: Fraction) -> Fraction:
    """
    Read h^res_r off the boundary: the line {(t - (1+m)/r, t)} meets the augmented
    polyhedron at a point whose t2-coordinate is 1 + h^res_r.

    Raises:
        NonpositiveRatioError: If r <= 0
    """
    r = Fraction(r)
    if r <= 0:
        raise NonpositiveRatioError(f"Ratio r must be positive, got {r}", {"r": str(r)})
    shift = (1 + aug.m) / r
    hit: Optional[Fraction] = None
    for (p1, p2), (v1, v2), is_ray in _boundary_pieces(aug):
        denominator = Fraction(v1) - Fraction(v2)
        if denominator == 0:
            continue
        s = (p2 - p1 - shift) / denominator
        if s < 0 or (not is_ray and s > 1):
            continue
        t2 = p2 + s * v2
        hit = t2 if hit is None else max(hit, t2)
    if hit is None:
        raise AssertionError("Diagonal line misses the augmented boundary")
    return hit - 1
