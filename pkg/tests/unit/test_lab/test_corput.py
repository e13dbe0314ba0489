"""Unit tests for the van der Corput checks."""

import math
import os
import sys

import numpy as np
import pytest
from numpy.polynomial import Polynomial
from scipy import integrate

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "..", "..", "src"))

from errors import HypothesisUnverifiedError
from lab.corput import (
    FRESNEL_LIMIT,
    amplitude_norm,
    fresnel_oracle,
    polynomial_type_check,
    van_der_corput_check,
    van_der_corput_constant,
)
from lab.quadrature import QuadratureConfig

SQUARE = Polynomial([0.0, 0.0, 1.0])


class TestConstants:
    """Test cases for C_M and the Fresnel oracle."""

    @pytest.mark.parametrize("order, expected", [(1, 3), (2, 8), (3, 18), (4, 38)])
    def test_constant(self, order, expected):
        """Test C_M = 5 * 2^(M-1) - 2."""
        assert van_der_corput_constant(order) == expected

    def test_constant_needs_positive_order(self):
        """Test M = 0 raises."""
        with pytest.raises(ValueError):
            van_der_corput_constant(0)

    def test_fresnel_oracle_matches_quad(self):
        """Test the oracle against direct scipy quadrature at lambda = 10."""
        re, _ = integrate.quad(lambda s: math.cos(10 * s * s), 0, 1, epsabs=1e-13, limit=200)
        im, _ = integrate.quad(lambda s: math.sin(10 * s * s), 0, 1, epsabs=1e-13, limit=200)
        assert fresnel_oracle(10.0) == pytest.approx(complex(re, im), abs=1e-11)

    def test_fresnel_limit(self):
        """Test sqrt(lambda) |oracle| approaches sqrt(pi)/2."""
        assert math.sqrt(1e8) * abs(fresnel_oracle(1e8)) == pytest.approx(FRESNEL_LIMIT, rel=1e-3)


class TestHypothesis:
    """Test cases for |f^(M)| >= 1."""

    def test_square_has_second_derivative_two(self):
        """Test f = s^2, M = 2."""
        assert polynomial_type_check(SQUARE, 2, (0.0, 1.0)) == pytest.approx(2.0)

    def test_small_derivative_raises(self):
        """Test f = s^2/4 fails for M = 2."""
        with pytest.raises(HypothesisUnverifiedError) as exc:
            polynomial_type_check(Polynomial([0.0, 0.0, 0.25]), 2, (0.0, 1.0))
        assert exc.value.details["order"] == 2

    def test_amplitude_norm_of_constant(self):
        """Test ||1||_inf + ||0||_1 = 1."""
        assert amplitude_norm(np.ones_like, (0.0, 1.0)) == pytest.approx(1.0)

    def test_amplitude_norm_of_ramp(self):
        """Test ||s||_inf + ||1||_1 = 2 on [0, 1]."""
        assert amplitude_norm(lambda t: t, (0.0, 1.0)) == pytest.approx(2.0)


class TestVanDerCorputCheck:
    """Test cases for the full bound check."""

    def test_fresnel_case_within_bound(self):
        """Test f = s^2, g = 1 stays below 8 and matches the oracle."""
        report = van_der_corput_check(SQUARE, 2, [10.0, 100.0, 1000.0], config=QuadratureConfig())
        assert report.within_bound
        assert report.bound == pytest.approx(8.0)
        assert report.oracle_deviation < 1e-8
        assert report.sup_statistic < FRESNEL_LIMIT + 0.2

    def test_first_order_with_amplitude(self):
        """Test f = 2s with a ramp amplitude."""
        report = van_der_corput_check(
            Polynomial([0.0, 2.0]), 1, [4.0, 16.0], g=lambda t: t, config=QuadratureConfig()
        )
        assert report.within_bound
        assert report.oracle_deviation is None
