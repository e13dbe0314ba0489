"""Assemble the JSON analysis report and its canonical serialization."""

import hashlib
import json
import logging
from fractions import Fraction
from typing import Any, Dict

from errors import NotApplicableError, RestriktError
from geometry.augmented import KFunction, restriction_height, restriction_height_geometric
from geometry.newton import FaceKind
from models.report import (
    TOOL_VERSION,
    AdaptednessModel,
    AnalysisReport,
    AugmentedModel,
    HalfPlaneModel,
    HeightsModel,
    HypothesisFlags,
    KFunctionModel,
    PolygonModel,
    PolyhedronModel,
    PrincipalFaceModel,
    RestrictionHeightModel,
    RootFactorModel,
    ShearStepModel,
    SingularityModel,
    WeightModel,
    rational_pair,
)
from pipeline.analysis import Analysis
from restriction.conditions import AdmissiblePolygon, admissible_polygon, diagonal_threshold
from restriction.singularity import classify, critical_exponent, lines_missing

logger = logging.getLogger(__name__)


def _augmented_blocks(analysis: Analysis):
    aug = analysis.augmented
    augmented = AugmentedModel(
        kappa=WeightModel.of(aug.kappa),
        anchor=[aug.anchor.t1, aug.anchor.t2],
        anchor_on_kappa_line=aug.anchor_on_kappa_line,
        l0=aug.l0,
        la=aug.la,
        kappa_la=WeightModel.of(aug.base.edge_weight(aug.la)),
        pivots=[[v.t1, v.t2] for v in aug.pivot_vertices()],
        supporting_weights=[WeightModel.of(w) for w in aug.supporting_weights()],
    )
    return augmented, kfunction_model(analysis.kfunction), restriction_height_model(analysis, Fraction(1))


def kfunction_model(k: KFunction) -> KFunctionModel:
    return KFunctionModel(
        u_min=k.u_min, u_max=k.u_max, breakpoints=[[u, v] for u, v in k.breakpoints], infinite_below=k.infinite_below
    )


def restriction_height_model(analysis: Analysis, r: Fraction) -> RestrictionHeightModel:
    hres = restriction_height(analysis.augmented, analysis.d, r)
    threshold, _ = diagonal_threshold(analysis, r)
    return RestrictionHeightModel(
        r=hres.r,
        value=hres.value,
        argmax=hres.argmax_label,
        geometric=restriction_height_geometric(analysis.augmented, r),
        diagonal_threshold=threshold,
    )


def polygon_model(polygon: AdmissiblePolygon) -> PolygonModel:
    return PolygonModel(
        vertices=[rational_pair(v) for v in polygon.vertices],
        ptilde_included=polygon.ptilde_included,
        ptilde_excluded_reason=polygon.ptilde_excluded_reason.value if polygon.ptilde_excluded_reason else None,
        halfplanes=[HalfPlaneModel(label=p.name, a=p.a, b=p.b, c=p.c) for p in polygon.halfplanes],
        used_fallback=polygon.used_fallback,
    )


def _singularity_block(analysis: Analysis):
    try:
        c = classify(analysis)
    except RestriktError as e:
        # only the classification is skipped; the rest of the report stands
        logger.info(f"No singularity class: {e.message}")
        return None, e.code
    q = critical_exponent(c)
    model = SingularityModel(
        kind=c.kind.value,
        label=c.label,
        m=c.m,
        n=c.n,
        critical_exponent=rational_pair(q),
        on_condition_lines=not lines_missing(analysis, q),
    )
    return model, None


def build_report(analysis: Analysis) -> AnalysisReport:
    """Serialize an Analysis with its polygon, restriction height and singularity class."""
    heights = analysis.heights
    adaptedness = analysis.adaptedness
    polygon = admissible_polygon(analysis)

    augmented = kfunction = restriction = None
    singularity, note = None, NotApplicableError.code
    if not analysis.adapted:
        augmented, kfunction, restriction = _augmented_blocks(analysis)
        singularity, note = _singularity_block(analysis)

    return AnalysisReport(
        input=analysis.source.to_text(),
        normalized=analysis.normalized,
        phase=analysis.phi.to_text(),
        linear_change=analysis.linear_change.describe(),
        working_phase=analysis.oriented.to_text(),
        swapped=analysis.swapped,
        polyhedron=PolyhedronModel.of(analysis.polyhedron),
        principal_face=PrincipalFaceModel.of(analysis.principal),
        adaptedness=AdaptednessModel(
            adapted=adaptedness.adapted,
            reason=adaptedness.reason.value,
            root=adaptedness.root,
            multiplicity=adaptedness.multiplicity,
            factors=[
                RootFactorModel(factor=f.text, multiplicity=f.multiplicity, root=f.root, real_roots=f.real_roots)
                for f in adaptedness.factors
            ],
        ),
        psi=analysis.trace.psi.to_text(),
        shear_steps=[
            ShearStepModel(coefficient=s.coefficient, exponent=s.exponent, distance=s.distance) for s in analysis.trace.steps
        ],
        phi_a=analysis.phi_a.to_text(("y1", "y2")),
        adapted_polyhedron=PolyhedronModel.of(analysis.adapted_polyhedron),
        adapted_principal_face=PrincipalFaceModel.of(analysis.adapted_principal),
        heights=HeightsModel(
            d=heights.d, h=heights.h, h_lin=heights.h_lin, nu=heights.nu, m=heights.m, nu_heuristic=heights.nu_heuristic
        ),
        adapted=analysis.adapted,
        augmented=augmented,
        kfunction=kfunction,
        restriction_height=restriction,
        polygon=polygon_model(polygon),
        singularity=singularity,
        singularity_note=note,
        flags=HypothesisFlags(
            b0_vanishes=analysis.b0_vanishes,
            h_lin_below_two=heights.h_lin < 2,
            principal_face_adapted_compact=analysis.adapted_principal.face.kind in (FaceKind.VERTEX, FaceKind.COMPACT_EDGE),
            nu_heuristic=heights.nu_heuristic,
        ),
    )


def canonical_json(report: Dict[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ":"))


def render_json(report) -> str:
    """
    {"report": ..., "meta": {"tool_version", "report_sha256"}} with sorted keys and a trailing newline.

    The hash covers the canonical compact form of the report body only.
    """
    body = report.model_dump(mode="json")
    digest = hashlib.sha256(canonical_json(body).encode("utf-8")).hexdigest()
    document = {"report": body, "meta": {"tool_version": TOOL_VERSION, "report_sha256": digest}}
    return json.dumps(document, sort_keys=True, indent=2) + "\n"
