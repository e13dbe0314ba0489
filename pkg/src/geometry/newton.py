"""Newton polyhedra of lattice supports: vertices, faces, weights and the principal face."""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from algebra.numbers import INF, ExtRational, reciprocal
from algebra.polynomial import BivariatePolynomial, LatticePoint
from errors import EmptySupportError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Weight:
    """Coefficients (k1, k2) of a supporting line k1*t1 + k2*t2 = 1."""

    k1: ExtRational
    k2: ExtRational

    def __post_init__(self):
        if self.k1 == 0 and self.k2 == 0:
            raise ValueError("Weight components cannot both be zero")
        if self.k1 < 0 or self.k2 < 0:
            raise ValueError(f"Weight components must be non-negative: ({self.k1}, {self.k2})")

    @property
    def is_finite(self) -> bool:
        return self.k1 is not INF and self.k2 is not INF

    def slope(self) -> ExtRational:
        """a = k2/k1, the negative reciprocal slope of the supporting line."""
        if self.k1 is INF:
            return Fraction(0)
        if self.k1 == 0:
            return INF
        return self.k2 / self.k1

    def dot(self, t: Tuple[int, int]) -> ExtRational:
        """k . t with the convention inf * 0 = 0."""
        total: ExtRational = Fraction(0)
        for k, x in ((self.k1, t[0]), (self.k2, t[1])):
            if x != 0:
                total = total + k * x
        return total

    def distance(self) -> Fraction:
        """Coordinate d of the point (d, d) on the supporting line."""
        return reciprocal(self.k1 + self.k2)

    def transpose(self) -> "Weight":
        return Weight(self.k2, self.k1)

    def __str__(self) -> str:
        return f"({self.k1}, {self.k2})"


class FaceKind(str, Enum):
    VERTEX = "Vertex"
    COMPACT_EDGE = "CompactEdge"
    VERTICAL_EDGE = "UnboundedVerticalEdge"
    HORIZONTAL_EDGE = "UnboundedHorizontalEdge"


@dataclass(frozen=True)
class Face:
    kind: FaceKind
    endpoints: Tuple[LatticePoint, ...]
    weight: Optional[Weight] = None

    def is_compact_edge(self) -> bool:
        return self.kind is FaceKind.COMPACT_EDGE

    def is_compact(self) -> bool:
        return self.kind in (FaceKind.VERTEX, FaceKind.COMPACT_EDGE)

    def contains(self, t: Tuple[int, int]) -> bool:
        t1, t2 = t
        first = self.endpoints[0]
        if self.kind is FaceKind.VERTEX:
            return (t1, t2) == tuple(first)
        if self.kind is FaceKind.VERTICAL_EDGE:
            return t1 == first.t1 and t2 >= first.t2
        if self.kind is FaceKind.HORIZONTAL_EDGE:
            return t2 == first.t2 and t1 >= first.t1
        last = self.endpoints[1]
        return first.t1 <= t1 <= last.t1 and self.weight.dot(t) == 1

    def __str__(self) -> str:
        points = ", ".join(f"({p.t1},{p.t2})" for p in self.endpoints)
        return f"{self.kind.value}[{points}]"


@dataclass(frozen=True)
class NewtonPolyhedron:
    """
    Newton polyhedron given by its vertices (A_l, B_l), l = 0..n.

    Edge l joins vertex l-1 to vertex l for 1 <= l <= n; edge 0 is the vertical
    ray above vertex 0 and edge n+1 the horizontal ray right of vertex n.
    """

    vertices: Tuple[LatticePoint, ...]

    @property
    def n(self) -> int:
        return len(self.vertices) - 1

    def edge_weight(self, l: int) -> Weight:
        if l == 0:
            a0 = self.vertices[0].t1
            return Weight(INF if a0 == 0 else Fraction(1, a0), Fraction(0))
        if l == self.n + 1:
            bn = self.vertices[-1].t2
            return Weight(Fraction(0), INF if bn == 0 else Fraction(1, bn))
        (a_prev, b_prev), (a_cur, b_cur) = self.vertices[l - 1], self.vertices[l]
        det = a_cur * b_prev - a_prev * b_cur
        return Weight(Fraction(b_prev - b_cur, det), Fraction(a_cur - a_prev, det))

    def weights(self) -> List[Weight]:
        return [self.edge_weight(l) for l in range(self.n + 2)]

    def slopes(self) -> List[ExtRational]:
        return [w.slope() for w in self.weights()]

    def edge(self, l: int) -> Face:
        if l == 0:
            return Face(FaceKind.VERTICAL_EDGE, (self.vertices[0],), self.edge_weight(0))
        if l == self.n + 1:
            return Face(FaceKind.HORIZONTAL_EDGE, (self.vertices[-1],), self.edge_weight(l))
        return Face(FaceKind.COMPACT_EDGE, (self.vertices[l - 1], self.vertices[l]), self.edge_weight(l))

    def vertex_face(self, l: int) -> Face:
        return Face(FaceKind.VERTEX, (self.vertices[l],))

    def faces(self) -> List[Face]:
        return [self.vertex_face(l) for l in range(self.n + 1)] + [self.edge(l) for l in range(self.n + 2)]

    def contains(self, t: Tuple[int, int]) -> bool:
        """Exact membership test for a point of the plane."""
        t1, t2 = t
        if t1 < self.vertices[0].t1 or t2 < self.vertices[-1].t2:
            return False
        return all(self.edge_weight(l).dot(t) >= 1 for l in range(1, self.n + 1))

    def distance_along(self, direction: Tuple[int, int]) -> ExtRational:
        """Smallest s > 0 with s * direction in the polyhedron; the bisectrix (1, 1) gives d."""
        u1, u2 = Fraction(direction[0]), Fraction(direction[1])
        if u1 < 0 or u2 < 0 or (u1 == 0 and u2 == 0):
            raise ValueError(f"Direction must be a nonzero vector with nonnegative entries, got {direction}")
        first, last = self.vertices[0], self.vertices[-1]
        if (u1 == 0 and first.t1 > 0) or (u2 == 0 and last.t2 > 0):
            return INF
        bounds = [Fraction(0)]
        if u1 > 0:
            bounds.append(first.t1 / u1)
        if u2 > 0:
            bounds.append(last.t2 / u2)
        for l in range(1, self.n + 1):
            weight = self.edge_weight(l)
            bounds.append(1 / (weight.k1 * u1 + weight.k2 * u2))
        return max(bounds)

    def transpose(self) -> "NewtonPolyhedron":
        return NewtonPolyhedron(tuple(LatticePoint(b, a) for a, b in reversed(self.vertices)))


@dataclass(frozen=True)
class PrincipalFaceInfo:
    face: Face
    kappa: Weight
    m: ExtRational
    d: Fraction
    index: int

    @property
    def is_vertex(self) -> bool:
        return self.face.kind is FaceKind.VERTEX

    @property
    def is_compact_edge(self) -> bool:
        return self.face.is_compact_edge()

    @property
    def is_compact(self) -> bool:
        return self.face.is_compact()

    @property
    def bisectrix_point(self) -> Tuple[Fraction, Fraction]:
        return self.d, self.d


def _cross(o: Sequence[int], a: Sequence[int], b: Sequence[int]) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def build_newton_polyhedron(support: Iterable[Tuple[int, int]]) -> NewtonPolyhedron:
    """
    Build the Newton polyhedron of a finite lattice support.

    The Pareto-minimal points are swept by increasing t1 and a monotone chain keeps
    only the strict lower-left convex staircase, so collinear points are dropped.

    Raises:
        EmptySupportError: If the support is empty
    """
    points = sorted({(int(a), int(b)) for a, b in support})
    if not points:
        raise EmptySupportError("Cannot build a Newton polyhedron from an empty support")

    minimal: List[Tuple[int, int]] = []
    for point in points:
        if not minimal or point[1] < minimal[-1][1]:
            minimal.append(point)

    chain: List[Tuple[int, int]] = []
    for point in minimal:
        while len(chain) >= 2 and _cross(chain[-2], chain[-1], point) <= 0:
            chain.pop()
        chain.append(point)

    return NewtonPolyhedron(tuple(LatticePoint(a, b) for a, b in chain))


def principal_face(polyhedron: NewtonPolyhedron) -> PrincipalFaceInfo:
    """
    Locate the face of minimal dimension meeting the bisectrix t1 = t2.

    For a vertex the weight is that of the edge having the vertex as its left
    endpoint, which is the horizontal edge (0, 1/B) for the last vertex.
    """
    vertices = polyhedron.vertices
    for l, (a, b) in enumerate(vertices):
        if a == b:
            if b == 0:
                raise AssertionError("Vertex (0, 0) cannot be a principal face")
            kappa = polyhedron.edge_weight(l + 1)
            return PrincipalFaceInfo(polyhedron.vertex_face(l), kappa, kappa.slope(), Fraction(a), l)

    if vertices[0].t1 > vertices[0].t2:
        kappa = polyhedron.edge_weight(0)
        return PrincipalFaceInfo(polyhedron.edge(0), kappa, kappa.slope(), Fraction(vertices[0].t1), 0)
    if vertices[-1].t1 < vertices[-1].t2:
        l = polyhedron.n + 1
        kappa = polyhedron.edge_weight(l)
        return PrincipalFaceInfo(polyhedron.edge(l), kappa, kappa.slope(), Fraction(vertices[-1].t2), l)

    for l in range(1, polyhedron.n + 1):
        (a_prev, b_prev), (a_cur, b_cur) = vertices[l - 1], vertices[l]
        if a_prev < b_prev and a_cur > b_cur:
            kappa = polyhedron.edge_weight(l)
            return PrincipalFaceInfo(polyhedron.edge(l), kappa, kappa.slope(), kappa.distance(), l)
    raise AssertionError(f"No face of {vertices} meets the bisectrix")


def newton_distance(p: BivariatePolynomial) -> Fraction:
    """d(p), the Newton distance of a polynomial."""
    return principal_face(build_newton_polyhedron(p.support())).d


def canonical_orientation(p: BivariatePolynomial) -> Tuple[BivariatePolynomial, bool]:
    """
    Swap the variables iff the principal weight has k2 < k1.

    Ties are kept in the original orientation.

    Returns:
        Tuple of (possibly swapped polynomial, whether a swap occurred)
    """
    info = principal_face(build_newton_polyhedron(p.support()))
    if info.kappa.k2 < info.kappa.k1:
        logger.debug(f"Swapping variables of {p.to_text()}: principal weight {info.kappa}")
        return p.swap(), True
    return p, False
