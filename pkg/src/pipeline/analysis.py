"""End-to-end analysis of a phase: normalization, adapted coordinates and augmented geometry."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from algebra.polynomial import BivariatePolynomial
from algebra.validation import check_origin_conditions, normalize_gradient
from geometry.adapted import (
    DEFAULT_MAX_ITER,
    AdaptednessReport,
    Heights,
    LinearChange,
    VarchenkoTrace,
    adaptedness_test,
    linear_height,
    nu_from_adapted,
    to_adapted,
)
from geometry.augmented import AugmentedPolyhedron, KFunction, build_augmented, k_function
from geometry.newton import (
    NewtonPolyhedron,
    PrincipalFaceInfo,
    build_newton_polyhedron,
    canonical_orientation,
    newton_distance,
    principal_face,
)
from utils.observability import get_analysis_logger, track_latency

log = get_analysis_logger("pipeline")


@dataclass(frozen=True)
class Analysis:
    """
    Every exact invariant of a phase.

    ``phi`` is the validated input, ``oriented`` the phase after the linear change
    realizing h_lin and canonical orientation. All kappa/m/psi values refer to
    ``oriented``; ``phi_a`` is ``oriented`` sheared by ``psi``.
    """

    source: BivariatePolynomial
    phi: BivariatePolynomial
    normalized: bool
    linear_change: LinearChange
    oriented: BivariatePolynomial
    swapped: bool
    polyhedron: NewtonPolyhedron
    principal: PrincipalFaceInfo
    adaptedness: AdaptednessReport
    trace: VarchenkoTrace
    adapted_polyhedron: NewtonPolyhedron
    adapted_principal: PrincipalFaceInfo
    heights: Heights
    augmented: Optional[AugmentedPolyhedron] = None
    kfunction: Optional[KFunction] = None

    @property
    def phi_a(self) -> BivariatePolynomial:
        return self.trace.phi_a

    @property
    def adapted(self) -> bool:
        """True when the linearly adapted coordinates are already adapted."""
        return self.adaptedness.adapted

    @property
    def m(self):
        return self.principal.m

    @property
    def kappa(self):
        return self.principal.kappa

    @property
    def d(self) -> Fraction:
        """Newton distance in the working coordinates (equal to h_lin)."""
        return self.principal.d

    @property
    def h(self) -> Fraction:
        return self.heights.h

    @property
    def nu(self) -> int:
        return self.heights.nu

    @property
    def b0_vanishes(self) -> bool:
        """The pure-y1 part of the adapted phase is identically zero."""
        return not any(b == 0 for _, b in self.phi_a.support())


@track_latency("pipeline")
def analyze(
    phi: BivariatePolynomial, normalize: bool = False, max_iter: int = DEFAULT_MAX_ITER
) -> Analysis:
    """
    Run the full exact pipeline on a phase.

    Args:
        phi: Phase polynomial
        normalize: Subtract the linear part first instead of rejecting it
        max_iter: Cap on the number of shear steps

    Returns:
        The Analysis bundle

    Raises:
        OriginConditionError: If the phase fails the origin checks
        IterationCapReachedError: If adapted coordinates are not reached
        IrrationalRootEncounteredError: If an excess root is irrational
    """
    source = phi
    if normalize:
        phi = normalize_gradient(phi)
    check_origin_conditions(phi).raise_if_rejected()

    d_input = newton_distance(phi)
    h_lin, change = linear_height(phi)
    oriented, swapped = canonical_orientation(change.apply(phi))
    text = phi.to_text()
    log.log_stage(
        "orientation", text, {"d": str(d_input), "h_lin": str(h_lin), "change": change.kind.value, "swapped": swapped}
    )
    polyhedron = build_newton_polyhedron(oriented.support())
    principal = principal_face(polyhedron)
    adaptedness = adaptedness_test(oriented)

    trace = to_adapted(oriented, max_iter)
    adapted_polyhedron = build_newton_polyhedron(trace.phi_a.support())
    adapted_principal = principal_face(adapted_polyhedron)
    heights = Heights(
        d=d_input,
        h=adapted_principal.d,
        h_lin=h_lin,
        nu=nu_from_adapted(trace.phi_a),
        m=principal.m,
    )
    log.log_stage("varchenko", text, {"steps": len(trace.steps), "h": str(heights.h), "nu": heights.nu})

    augmented = None
    kfunction = None
    if not adaptedness.adapted:
        augmented = build_augmented(adapted_polyhedron, principal.kappa)
        kfunction = k_function(augmented)
        log.log_stage("augmented", text, {"l0": augmented.l0, "la": augmented.la, "anchor": list(augmented.anchor)})

    return Analysis(
        source=source,
        phi=phi,
        normalized=normalize,
        linear_change=change,
        oriented=oriented,
        swapped=swapped,
        polyhedron=polyhedron,
        principal=principal,
        adaptedness=adaptedness,
        trace=trace,
        adapted_polyhedron=adapted_polyhedron,
        adapted_principal=adapted_principal,
        heights=heights,
        augmented=augmented,
        kfunction=kfunction,
    )
