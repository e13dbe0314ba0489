"""Unit tests for the Airy scaling collapse."""

import math
import os
import sys

import pytest
from numpy.polynomial import Polynomial
from scipy import special

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "..", "..", "src"))

from lab.airy import airy_collapse_check, airy_limit_profile
from lab.decay import Verdict
from lab.quadrature import QuadratureConfig

V_GRID = [-2.0, -1.0, 0.0, 1.0, 2.0]


class TestAiryProfile:
    """Test cases for the limit profile."""

    def test_value_at_zero(self):
        """Test the integral of exp(i s^3) over the line is 2 Gamma(1/3) cos(pi/6) / 3."""
        expected = 2 * special.gamma(1 / 3) * math.cos(math.pi / 6) / 3
        assert float(airy_limit_profile(0.0, 1.0)) == pytest.approx(expected, rel=1e-12)

    def test_sign_of_b0_reflects_v(self):
        """Test negative b0 mirrors the profile in v."""
        assert float(airy_limit_profile(1.5, -2.0)) == pytest.approx(float(airy_limit_profile(-1.5, 2.0)))

    def test_zero_b0_raises(self):
        """Test b(0) = 0 has no Airy limit."""
        with pytest.raises(ValueError):
            airy_limit_profile(0.0, 0.0)


class TestAiryCollapse:
    """Test cases for the collapse check."""

    @pytest.mark.slow
    def test_constant_cubic_collapses(self):
        """Test spreads shrink and the last row approaches the profile for b = 1."""
        report = airy_collapse_check(Polynomial([1.0]), [2.0**k for k in range(9, 14)], V_GRID, config=QuadratureConfig())
        assert report.verdict is Verdict.PASS
        assert len(report.spreads) == 4
        assert report.profile_deviation < 0.2

    def test_single_frequency_inconclusive(self):
        """Test one lambda gives no spread."""
        report = airy_collapse_check(Polynomial([1.0]), [64.0], V_GRID, config=QuadratureConfig())
        assert report.verdict is Verdict.INCONCLUSIVE
        assert report.max_spread == 0.0
