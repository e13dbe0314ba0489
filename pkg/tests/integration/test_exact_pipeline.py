"""
Integration tests for the exact pipeline over the worked examples and the A/D normal-form sweep.

Every case runs parse -> analyze -> classify -> polygon -> K -> h^res with no mocks.
"""

import os
import random
import sys
from fractions import Fraction

import pytest

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "..", "src"))

from algebra.parser import parse_polynomial
from geometry.augmented import restriction_height, restriction_height_geometric
from geometry.newton import Weight
from lab.decay import Verdict
from lab.knapp import compare_exponents, knapp_sweep
from pipeline.analysis import analyze
from pipeline.report import build_report, render_json
from restriction.conditions import (
    HalfPlaneLabel,
    admissible_polygon,
    condition_halfplanes,
    diagonal_threshold,
    halfplane_intersection_polygon,
    legendre_condition,
)
from restriction.singularity import SingularityKind, classify, critical_exponent, expected_invariants, lines_missing

RATIOS = [Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(5)]
AXES = (HalfPlaneLabel.AXIS_P1, HalfPlaneLabel.AXIS_P3)


def _condition_lines(analysis):
    return [p for p in condition_halfplanes(analysis) if p.label not in AXES]


@pytest.mark.integration
class TestWorkedExamples:
    """Exact invariants of the two worked examples."""

    def test_e1_a4(self, e1_text):
        """Test the A4 example end to end."""
        analysis = analyze(parse_polynomial(e1_text))
        assert analysis.polyhedron.vertices == ((0, 2), (4, 0))
        assert analysis.kappa == Weight(Fraction(1, 4), Fraction(1, 2))
        assert (analysis.heights.d, analysis.heights.h_lin, analysis.h, analysis.nu) == (
            Fraction(4, 3),
            Fraction(4, 3),
            Fraction(10, 7),
            0,
        )
        assert classify(analysis).label == "A4"
        assert admissible_polygon(analysis).vertices == (
            (0, 0),
            (Fraction(1, 2), 0),
            (Fraction(1, 6), Fraction(1, 4)),
            (0, Fraction(7, 20)),
        )

    def test_e2_d7(self, e2_text):
        """Test the D7 example end to end."""
        analysis = analyze(parse_polynomial(e2_text))
        singularity = classify(analysis)
        assert singularity.label == "D7"
        assert analysis.h == Fraction(12, 7)
        assert critical_exponent(singularity, analysis) == (Fraction(1, 12), Fraction(1, 4))
        assert analysis.kfunction.evaluate(Fraction(1, 6)) == Fraction(5, 12)

    def test_reports_are_reproducible(self, e1_text, e2_text):
        """Test two independent runs give byte-identical JSON."""
        for text in (e1_text, e2_text):
            first = render_json(build_report(analyze(parse_polynomial(text))))
            second = render_json(build_report(analyze(parse_polynomial(text))))
            assert first == second


@pytest.mark.integration
class TestNormalFormSweep:
    """The A/D parameter sweep: m in 2..4 with seven values of n per type."""

    def test_classification_matches_construction(self, normal_form_analyses):
        """Test every normal form is classified as what it was built as."""
        for kind, m, n, analysis in normal_form_analyses:
            singularity = classify(analysis)
            assert singularity.kind is SingularityKind(kind)
            assert (singularity.m, singularity.n) == (m, n)
            assert singularity.kind is not SingularityKind(("D" if kind == "A" else "A"))

    def test_closed_form_invariants(self, normal_form_analyses):
        """Test kappa, the adapted principal weight, d and h against the closed forms."""
        for kind, m, n, analysis in normal_form_analyses:
            expected = expected_invariants(classify(analysis))
            assert analysis.kappa == expected.kappa, (kind, m, n)
            assert analysis.adapted_principal.kappa == expected.kappa_la, (kind, m, n)
            assert analysis.d == expected.d, (kind, m, n)
            assert analysis.h == expected.h, (kind, m, n)
            assert not analysis.adapted

    def test_height_at_most_two_below_linear_height_two(self, normal_form_analyses):
        """Test every normal form has h_lin < 2 and h <= 2."""
        for kind, m, n, analysis in normal_form_analyses:
            assert analysis.heights.h_lin < 2, (kind, m, n)
            assert analysis.h <= 2, (kind, m, n)

    def test_critical_exponent_on_both_lines(self, normal_form_analyses):
        """Test the critical exponent lies on the kappa line and the adapted edge line."""
        for kind, m, n, analysis in normal_form_analyses:
            q = critical_exponent(classify(analysis))
            denominator = 2 * m + 2 if kind == "A" else 4 * m + 4
            assert q == (Fraction(1, denominator), Fraction(1, 4))
            assert lines_missing(analysis, q) == []
            assert q in admissible_polygon(analysis).vertices

    def test_polygon_matches_halfplane_oracle(self, normal_form_analyses):
        """Test the closed-form polygon equals the brute-force half-plane intersection."""
        for _, _, _, analysis in normal_form_analyses:
            polygon = admissible_polygon(analysis)
            assert halfplane_intersection_polygon(condition_halfplanes(analysis)) == list(polygon.vertices)

    def test_legendre_form_agrees(self, normal_form_analyses):
        """Test the Legendre condition against the line conditions on 1000 random points per phase."""
        rng = random.Random(11)
        for _, _, _, analysis in normal_form_analyses:
            lines = _condition_lines(analysis)
            for _ in range(1000):
                q = (Fraction(rng.randint(0, 1000), 2000), Fraction(rng.randint(0, 1000), 2000))
                assert legendre_condition(analysis, q) == all(p.contains(q) for p in lines)

    def test_restriction_height_formula_matches_geometry(self, normal_form_analyses):
        """Test the closed form of h^res against the boundary intersection for several ratios."""
        for _, _, _, analysis in normal_form_analyses:
            for r in RATIOS:
                formula = restriction_height(analysis.augmented, analysis.d, r).value
                assert formula == restriction_height_geometric(analysis.augmented, r)

    def test_diagonal_point_on_region_boundary(self, normal_form_analyses):
        """Test the diagonal threshold point satisfies every condition with one line tight."""
        for _, _, _, analysis in normal_form_analyses:
            lines = _condition_lines(analysis)
            for r in RATIOS:
                _, point = diagonal_threshold(analysis, r)
                assert all(p.contains(point) for p in condition_halfplanes(analysis))
                assert any(p.on_boundary(point) for p in lines)


@pytest.mark.integration
class TestKnappBoxes:
    """Knapp boxes of every supporting weight stay bounded."""

    def test_worked_examples_bounded(self, e1_analysis, e2_analysis):
        """Test sup |phi|/eps <= 10 for eps = 2^-1 .. 2^-20."""
        for analysis in (e1_analysis, e2_analysis):
            reports = knapp_sweep(analysis)
            assert reports
            assert all(report.verdict is Verdict.PASS for report in reports)
            assert all(report.max_ratio <= 10 for report in reports)

    def test_normal_forms_bounded(self, normal_form_analyses):
        """Test the box ratios across the sweep."""
        for kind, m, n, analysis in normal_form_analyses:
            for report in knapp_sweep(analysis):
                assert report.verdict is Verdict.PASS, (kind, m, n, str(report.weight))

    def test_exponent_equality_at_critical_point(self, normal_form_analyses):
        """Test equality on the polygon edge and strict inequality inside the polygon."""
        for _, _, _, analysis in normal_form_analyses:
            q = critical_exponent(classify(analysis))
            inside = (q[0] / 2, q[1] / 2)
            weights = [analysis.augmented.kappa, analysis.adapted_principal.kappa]
            for weight in weights:
                assert compare_exponents(weight, analysis.augmented.m, q).relation == "="
                assert compare_exponents(weight, analysis.augmented.m, inside).relation == "<"
