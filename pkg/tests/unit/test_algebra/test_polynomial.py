"""Unit tests for sparse bivariate polynomials and exact numbers."""

import os
import sys
from fractions import Fraction

import numpy as np
import pytest

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "..", "..", "src"))

from algebra.numbers import INF, format_ext, format_float, parse_ext, reciprocal
from algebra.parser import parse_polynomial
from algebra.polynomial import BivariatePolynomial, face_series, is_weighted_homogeneous
from errors import FaceNotOnPolyhedronError
from geometry.newton import Face, FaceKind, LatticePoint, build_newton_polyhedron

X1 = BivariatePolynomial.x1()
X2 = BivariatePolynomial.x2()


class TestExtendedRationals:
    """Test cases for rationals extended by +inf."""

    def test_inf_orders_above_every_rational(self):
        """Test that INF compares greater than any Fraction."""
        assert INF > Fraction(10**9)
        assert Fraction(-3) < INF
        assert max(Fraction(1, 2), INF) is INF

    def test_reciprocal_swaps_zero_and_inf(self):
        """Test 1/0 = inf and 1/inf = 0."""
        assert reciprocal(Fraction(0)) is INF
        assert reciprocal(INF) == 0
        assert reciprocal(Fraction(3, 4)) == Fraction(4, 3)

    def test_inf_times_zero_is_undefined(self):
        """Test that inf * 0 raises instead of guessing."""
        with pytest.raises(ArithmeticError):
            INF * Fraction(0)

    def test_format_ext_always_has_denominator(self):
        """Test "num/den" serialization, including integers and inf."""
        assert format_ext(Fraction(10, 7)) == "10/7"
        assert format_ext(Fraction(2)) == "2/1"
        assert format_ext(INF) == "inf"

    def test_parse_ext_reads_back(self):
        """Test parsing of serialized values."""
        assert parse_ext("10/7") == Fraction(10, 7)
        assert parse_ext(" inf ") is INF

    def test_format_float_uses_17_digits(self):
        """Test the CSV float format."""
        assert format_float(Fraction(1, 6)) == "0.16666666666666666"
        assert format_float(Fraction(7, 20)) == "0.34999999999999998"


class TestBivariatePolynomial:
    """Test cases for BivariatePolynomial arithmetic and printing."""

    def test_expansion_matches_parsed_form(self, e1):
        """Test (x2 - x1^2)^2 + x1^5 expands to the parsed E1."""
        assert (X2 - X1**2) ** 2 + X1**5 == e1
        assert e1.terms == {(0, 2): 1, (2, 1): -2, (4, 0): 1, (5, 0): 1}

    def test_zero_coefficients_are_dropped(self):
        """Test that cancelling terms leave the support."""
        p = X1 * X2 - X2 * X1 + X1**3
        assert p.support() == frozenset({(3, 0)})
        assert (X1 - X1).is_zero()

    def test_negative_exponent_rejected(self):
        """Test constructor validation of exponents."""
        with pytest.raises(ValueError):
            BivariatePolynomial({(-1, 2): 1})

    def test_canonical_text(self, e1):
        """Test terms print ordered by (t1, t2) with explicit operators."""
        assert e1.to_text() == "x2^2 - 2*x1^2*x2 + x1^4 + x1^5"
        assert BivariatePolynomial.monomial(Fraction(-3, 4), 1, 0).to_text() == "-3/4*x1"
        assert BivariatePolynomial.zero().to_text() == "0"

    def test_text_with_other_variable_names(self):
        """Test printing in adapted variables."""
        assert (X2**2 + X1**5).to_text(("y1", "y2")) == "y2^2 + y1^5"

    def test_substitute_composes_exactly(self):
        """Test p(x1, x2 + x1^2) for p = x2^2."""
        p = X2**2
        assert p.substitute(X1, X2 + X1**2) == X2**2 + 2 * X1**2 * X2 + X1**4

    def test_swap_is_an_involution(self, e1):
        """Test that swapping twice is the identity."""
        assert e1.swap().swap() == e1
        assert (X1**2 * X2).swap() == X1 * X2**2

    def test_exact_evaluation(self, e1):
        """Test exact evaluation at rational points."""
        assert e1.evaluate(1, 1) == 1
        assert e1.evaluate(Fraction(1, 2), Fraction(1, 4)) == Fraction(1, 32)

    def test_array_evaluation_matches_exact(self, e1):
        """Test vectorized evaluation against the exact one."""
        x1 = np.array([0.25, -0.5, 0.1])
        x2 = np.array([0.3, 0.2, -0.4])
        expected = [float(e1.evaluate(Fraction(a), Fraction(b))) for a, b in zip(x1, x2)]
        np.testing.assert_allclose(e1.evaluate_array(x1, x2), expected, rtol=1e-12)

    def test_broadcasting(self, e1):
        """Test evaluation on an outer grid."""
        grid = np.linspace(-1, 1, 5)
        assert e1.evaluate_array(grid[:, None], grid[None, :]).shape == (5, 5)

    def test_hash_follows_equality(self):
        """Test that equal polynomials hash equally."""
        assert hash(parse_polynomial("x1 x2 + x1^2")) == hash(X1**2 + X1 * X2)


class TestFaceSeries:
    """Test cases for face restriction."""

    def test_principal_edge_of_e1(self, e1):
        """Test the series on the edge t1/4 + t2/2 = 1."""
        edge = build_newton_polyhedron(e1.support()).edge(1)
        assert face_series(e1, edge) == X2**2 - 2 * X1**2 * X2 + X1**4

    def test_vertex_face(self, e1):
        """Test the series at the vertex (0, 2)."""
        vertex = build_newton_polyhedron(e1.support()).vertex_face(0)
        assert face_series(e1, vertex) == X2**2

    def test_adapted_edge(self):
        """Test both points of y2^2 + y1^5 lie on its edge."""
        p = X2**2 + X1**5
        edge = build_newton_polyhedron(p.support()).edge(1)
        assert face_series(p, edge) == p

    def test_foreign_face_rejected(self, e1):
        """Test that a face of another polyhedron raises."""
        face = Face(FaceKind.VERTEX, (LatticePoint(3, 3),))
        with pytest.raises(FaceNotOnPolyhedronError):
            face_series(e1, face)

    def test_weighted_homogeneity(self):
        """Test the degree-one homogeneity check."""
        assert is_weighted_homogeneous(X2**2 + X1**5, Fraction(1, 5), Fraction(1, 2))
        assert not is_weighted_homogeneous(X2**2 + X1**4, Fraction(1, 5), Fraction(1, 2))
