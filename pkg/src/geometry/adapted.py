"""Adapted coordinates: adaptedness test, Varchenko's shear iteration and heights."""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import sympy

from algebra.numbers import INF, ExtRational
from algebra.polynomial import BivariatePolynomial, face_series
from algebra.shear import ShearMap, apply_shear, linear_change_x1, swap_variables
from errors import CalledOnAdaptedError, IrrationalRootEncounteredError, IterationCapReachedError
from geometry.newton import (
    NewtonPolyhedron,
    build_newton_polyhedron,
    canonical_orientation,
    newton_distance,
    principal_face,
)

logger = logging.getLogger(__name__)

DEFAULT_MAX_ITER = 64

_T = sympy.Symbol("t")


class AdaptednessReason(str, Enum):
    PRINCIPAL_FACE_VERTEX = "PrincipalFaceVertex"
    PRINCIPAL_FACE_UNBOUNDED = "PrincipalFaceUnbounded"
    NON_INTEGER_M = "NonIntegerM"
    NO_EXCESS_ROOT = "NoExcessRoot"
    EXCESS_ROOT_FOUND = "ExcessRootFound"


@dataclass(frozen=True)
class RootFactor:
    """An irreducible rational factor of a face polynomial g(t) with its multiplicity."""

    text: str
    multiplicity: int
    root: Optional[Fraction]
    real_roots: int
    intervals: Tuple[Tuple[Fraction, Fraction], ...] = ()


@dataclass(frozen=True)
class AdaptednessReport:
    adapted: bool
    reason: AdaptednessReason
    root: Optional[Fraction] = None
    multiplicity: Optional[int] = None
    factors: Tuple[RootFactor, ...] = ()


@dataclass(frozen=True)
class VarchenkoStep:
    coefficient: Fraction
    exponent: int
    polyhedron: NewtonPolyhedron
    distance: Fraction


@dataclass
class VarchenkoTrace:
    steps: List[VarchenkoStep] = field(default_factory=list)
    psi: ShearMap = field(default_factory=ShearMap.identity)
    phi_a: BivariatePolynomial = field(default_factory=BivariatePolynomial.zero)
    swapped: bool = False


class LinearChangeKind(str, Enum):
    IDENTITY = "identity"
    SWAP = "swap"
    SHEAR_X2 = "shear_x2"
    SHEAR_X1 = "shear_x1"


@dataclass(frozen=True)
class LinearChange:
    """A linear coordinate change from the finite candidate set used for h_lin."""

    kind: LinearChangeKind = LinearChangeKind.IDENTITY
    c: Optional[Fraction] = None

    def apply(self, p: BivariatePolynomial) -> BivariatePolynomial:
        if self.kind is LinearChangeKind.SWAP:
            return swap_variables(p)
        if self.kind is LinearChangeKind.SHEAR_X2:
            return apply_shear(p, ShearMap.linear(self.c))
        if self.kind is LinearChangeKind.SHEAR_X1:
            return linear_change_x1(p, self.c)
        return p

    def describe(self) -> str:
        if self.kind is LinearChangeKind.SHEAR_X2:
            return f"x2 -> x2 + ({self.c})*x1"
        if self.kind is LinearChangeKind.SHEAR_X1:
            return f"x1 -> x1 + ({self.c})*x2"
        return self.kind.value


@dataclass(frozen=True)
class Heights:
    d: Fraction
    h: Fraction
    h_lin: Fraction
    nu: int
    m: ExtRational
    nu_heuristic: bool = True


def _face_profile(p: BivariatePolynomial, info_face) -> Dict[int, Fraction]:
    """Coefficients of g(t) = p_face(1, t), keyed by the power of t."""
    profile: Dict[int, Fraction] = {}
    for (_, b), c in face_series(p, info_face).sorted_terms():
        profile[b] = profile.get(b, Fraction(0)) + c
    return profile


def factor_face_polynomial(profile: Dict[int, Fraction]) -> List[RootFactor]:
    """Factor g(t) over the rationals and classify each factor's real roots."""
    poly = sympy.Poly.from_dict(
        {(k,): sympy.Rational(c.numerator, c.denominator) for k, c in profile.items()}, _T, domain="QQ"
    )
    _, factors = poly.factor_list()
    result: List[RootFactor] = []
    for factor, multiplicity in factors:
        if factor.degree() == 1:
            a, b = factor.all_coeffs()
            root = sympy.Rational(-b / a)
            result.append(
                RootFactor(str(factor.as_expr()), int(multiplicity), Fraction(int(root.p), int(root.q)), 1)
            )
            continue
        intervals = tuple(
            (Fraction(int(lo.p), int(lo.q)), Fraction(int(hi.p), int(hi.q))) for (lo, hi), _ in factor.intervals()
        )
        result.append(RootFactor(str(factor.as_expr()), int(multiplicity), None, int(factor.count_roots()), intervals))
    return result


def _excess_root(factors: List[RootFactor], d: Fraction) -> Optional[RootFactor]:
    """The nonzero real root whose multiplicity exceeds d, if any."""
    for factor in factors:
        if factor.multiplicity <= d or factor.real_roots == 0 or factor.root == 0:
            continue
        if factor.root is None:
            raise IrrationalRootEncounteredError(factor.text, factor.multiplicity, list(factor.intervals))
        return factor
    return None


def adaptedness_test(p: BivariatePolynomial) -> AdaptednessReport:
    """
    Decide whether the coordinates of p are adapted.

    The coordinates are adapted when the principal face is a vertex or unbounded,
    when m = k2/k1 is not a positive integer, or when the principal part has no
    nonzero real root x2 = c*x1^m of multiplicity greater than d. Because m is an
    integer, p_pr(x1, c*x1^m) = x1^N * g(c) with g(t) = p_pr(1, t), so the roots
    of g are exactly the candidates c for both signs of x1.

    Raises:
        IrrationalRootEncounteredError: If the excess root is irrational
    """
    info = principal_face(build_newton_polyhedron(p.support()))
    if info.is_vertex:
        return AdaptednessReport(True, AdaptednessReason.PRINCIPAL_FACE_VERTEX)
    if not info.is_compact_edge:
        return AdaptednessReport(True, AdaptednessReason.PRINCIPAL_FACE_UNBOUNDED)
    m = info.m
    if m is INF or m <= 0 or Fraction(m).denominator != 1:
        return AdaptednessReport(True, AdaptednessReason.NON_INTEGER_M)

    factors = factor_face_polynomial(_face_profile(p, info.face))
    witness = _excess_root(factors, info.d)
    if witness is None:
        return AdaptednessReport(True, AdaptednessReason.NO_EXCESS_ROOT, factors=tuple(factors))
    return AdaptednessReport(
        False, AdaptednessReason.EXCESS_ROOT_FOUND, witness.root, witness.multiplicity, tuple(factors)
    )


def varchenko_step(p: BivariatePolynomial) -> Tuple[Fraction, int]:
    """
    Return the shear increment (b, m) for one step of Varchenko's algorithm.

    Raises:
        CalledOnAdaptedError: If p is already in adapted coordinates
    """
    report = adaptedness_test(p)
    if report.adapted:
        raise CalledOnAdaptedError(f"{p.to_text()} is adapted ({report.reason.value})")
    info = principal_face(build_newton_polyhedron(p.support()))
    return report.root, int(info.m)


def to_adapted(p: BivariatePolynomial, max_iter: int = DEFAULT_MAX_ITER) -> VarchenkoTrace:
    """
    Shear p into adapted coordinates.

    The input is first put in canonical orientation. Each step shears by c*x1^m,
    where c is the excess root of the principal part, and strictly increases d.

    Raises:
        IterationCapReachedError: If the iteration does not stop within ``max_iter`` steps
    """
    current, swapped = canonical_orientation(p)
    trace = VarchenkoTrace(phi_a=current, swapped=swapped)
    for _ in range(max_iter):
        if adaptedness_test(current).adapted:
            return trace
        b, m = varchenko_step(current)
        step = ShearMap.monomial(b, m)
        current = apply_shear(current, step)
        polyhedron = build_newton_polyhedron(current.support())
        trace.steps.append(VarchenkoStep(b, m, polyhedron, principal_face(polyhedron).d))
        trace.psi = trace.psi.compose(step)
        trace.phi_a = current
        logger.debug(f"Shear by {b}*x1^{m}: d = {trace.steps[-1].distance}")
    if adaptedness_test(current).adapted:
        return trace
    raise IterationCapReachedError(max_iter, trace)


def height(p: BivariatePolynomial, max_iter: int = DEFAULT_MAX_ITER) -> Fraction:
    """h(p) = d(p^a)."""
    return newton_distance(to_adapted(p, max_iter).phi_a)


def _linear_candidates(p: BivariatePolynomial) -> List[LinearChange]:
    candidates = [LinearChange(), LinearChange(LinearChangeKind.SWAP)]
    d = newton_distance(p)
    for swapped, kind in ((False, LinearChangeKind.SHEAR_X2), (True, LinearChangeKind.SHEAR_X1)):
        q = swap_variables(p) if swapped else p
        polyhedron = build_newton_polyhedron(q.support())
        for l in range(1, polyhedron.n + 1):
            if polyhedron.edge_weight(l).slope() != 1:
                continue
            factors = factor_face_polynomial(_face_profile(q, polyhedron.edge(l)))
            _excess_root(factors, d)
            for factor in factors:
                if factor.root is not None and factor.root != 0:
                    candidates.append(LinearChange(kind, factor.root))
    return candidates


def linear_height(p: BivariatePolynomial) -> Tuple[Fraction, LinearChange]:
    """
    Compute h_lin(p) over the finite set of candidate linear changes.

    Candidates are the identity, the swap and the shears by the rational roots of
    the homogeneous parts on edges of slope 1, in both orientations.

    Returns:
        Tuple of (h_lin, witnessing change); ties keep the earliest candidate

    Raises:
        IrrationalRootEncounteredError: If a root of excess multiplicity is irrational
    """
    best_value: Optional[Fraction] = None
    best_change = LinearChange()
    for change in _linear_candidates(p):
        value = newton_distance(change.apply(p))
        if best_value is None or value > best_value:
            best_value, best_change = value, change
    return best_value, best_change


def varchenko_exponent(p: BivariatePolynomial, max_iter: int = DEFAULT_MAX_ITER) -> int:
    """
    nu(p): 1 iff h >= 2 and the principal face of the computed p^a is a vertex.

    Only the adapted system found by the shear iteration is inspected.
    """
    phi_a = to_adapted(p, max_iter).phi_a
    return nu_from_adapted(phi_a)


def nu_from_adapted(phi_a: BivariatePolynomial) -> int:
    info = principal_face(build_newton_polyhedron(phi_a.support()))
    return int(info.d >= 2 and info.is_vertex)
