"""Pydantic models for the JSON reports."""

from fractions import Fraction
from typing import Annotated, Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, PlainSerializer

from algebra.numbers import format_ext
from geometry.newton import NewtonPolyhedron, PrincipalFaceInfo, Weight

TOOL_VERSION = "0.1.0"

# Exact values travel as "num/den" strings, +inf as "inf"
Rational = Annotated[Any, PlainSerializer(format_ext, return_type=str)]


class ReportModel(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)


class WeightModel(ReportModel):
    k1: Rational
    k2: Rational

    @classmethod
    def of(cls, weight: Weight) -> "WeightModel":
        return cls(k1=weight.k1, k2=weight.k2)


class PolyhedronModel(ReportModel):
    """Vertices (A_l, B_l) and edge weights for l = 0..n+1."""

    vertices: List[List[int]]
    weights: List[WeightModel]
    slopes: List[Rational]

    @classmethod
    def of(cls, polyhedron: NewtonPolyhedron) -> "PolyhedronModel":
        return cls(
            vertices=[[v.t1, v.t2] for v in polyhedron.vertices],
            weights=[WeightModel.of(w) for w in polyhedron.weights()],
            slopes=polyhedron.slopes(),
        )


class PrincipalFaceModel(ReportModel):
    kind: str
    endpoints: List[List[int]]
    kappa: WeightModel
    m: Rational
    d: Rational
    index: int

    @classmethod
    def of(cls, info: PrincipalFaceInfo) -> "PrincipalFaceModel":
        return cls(
            kind=info.face.kind.value,
            endpoints=[[p.t1, p.t2] for p in info.face.endpoints],
            kappa=WeightModel.of(info.kappa),
            m=info.m,
            d=info.d,
            index=info.index,
        )


class HeightsModel(ReportModel):
    d: Rational
    h: Rational
    h_lin: Rational
    nu: int
    m: Rational
    nu_heuristic: bool


class RootFactorModel(ReportModel):
    factor: str
    multiplicity: int
    root: Optional[Rational] = None
    real_roots: int


class AdaptednessModel(ReportModel):
    adapted: bool
    reason: str
    root: Optional[Rational] = None
    multiplicity: Optional[int] = None
    factors: List[RootFactorModel] = []


class ShearStepModel(ReportModel):
    coefficient: Rational
    exponent: int
    distance: Rational


class AugmentedModel(ReportModel):
    kappa: WeightModel
    anchor: List[int]
    anchor_on_kappa_line: bool
    l0: int
    la: int
    kappa_la: WeightModel
    pivots: List[List[int]]
    supporting_weights: List[WeightModel]


class KFunctionModel(ReportModel):
    u_min: Rational
    u_max: Rational
    breakpoints: List[List[Rational]]
    infinite_below: bool


class HalfPlaneModel(ReportModel):
    label: str
    a: Rational
    b: Rational
    c: Rational


class PolygonModel(ReportModel):
    vertices: List[List[Rational]]
    ptilde_included: bool
    ptilde_excluded_reason: Optional[str] = None
    halfplanes: List[HalfPlaneModel]
    used_fallback: bool


class RestrictionHeightModel(ReportModel):
    r: Rational
    value: Rational
    argmax: str
    geometric: Rational
    diagonal_threshold: Rational


class RestrictionHeightTable(ReportModel):
    phase: str
    rows: List[RestrictionHeightModel]
    tool_version: str = TOOL_VERSION


class SingularityModel(ReportModel):
    kind: str
    label: str
    m: int
    n: Optional[int] = None
    critical_exponent: List[Rational]
    on_condition_lines: bool


class HypothesisFlags(ReportModel):
    b0_vanishes: bool
    h_lin_below_two: bool
    principal_face_adapted_compact: bool
    nu_heuristic: bool


class AnalysisReport(ReportModel):
    """Every exact invariant of a phase, in serialization order."""

    input: str
    normalized: bool
    phase: str
    linear_change: str
    working_phase: str
    swapped: bool
    polyhedron: PolyhedronModel
    principal_face: PrincipalFaceModel
    adaptedness: AdaptednessModel
    psi: str
    shear_steps: List[ShearStepModel]
    phi_a: str
    adapted_polyhedron: PolyhedronModel
    adapted_principal_face: PrincipalFaceModel
    heights: HeightsModel
    adapted: bool
    augmented: Optional[AugmentedModel] = None
    kfunction: Optional[KFunctionModel] = None
    restriction_height: Optional[RestrictionHeightModel] = None
    polygon: PolygonModel
    singularity: Optional[SingularityModel] = None
    singularity_note: Optional[str] = None
    flags: HypothesisFlags
    tool_version: str = TOOL_VERSION


class VerificationReport(ReportModel):
    """Verdict block of a numerical check."""

    check: str
    phase: Optional[str] = None
    verdict: str
    reason: str
    details: Dict[str, Any]
    tool_version: str = TOOL_VERSION


def rational_pair(q) -> List[Fraction]:
    return [Fraction(q[0]), Fraction(q[1])]
