"""Unit tests for decay exponent fits and verdicts."""

import os
import sys
from fractions import Fraction

import numpy as np
import pytest

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "..", "..", "src"))

from lab.decay import Verdict, compare_to, decay_exponent_fit

LAMBDAS = [2.0**k for k in range(1, 11)]


def _power_law(exponent, log_power=0):
    lam = np.array(LAMBDAS)
    return lam**exponent * np.log(lam) ** log_power


class TestDecayExponentFit:
    """Test cases for the log-log fit."""

    def test_exact_power_law(self):
        """Test lambda^(-7/10) is fitted exactly on the top samples."""
        fit = decay_exponent_fit(LAMBDAS, _power_law(-0.7))
        assert fit.slope == pytest.approx(-0.7, abs=1e-10)
        assert fit.r2 == pytest.approx(1.0)
        assert fit.samples == 10
        assert fit.lambdas == tuple(LAMBDAS[-6:])

    def test_log_correction(self):
        """Test the log-corrected slope removes (log lambda)^nu."""
        fit = decay_exponent_fit(LAMBDAS, _power_law(-0.5, 1), nu=1)
        assert fit.log_corrected_slope == pytest.approx(-0.5, abs=1e-10)
        assert fit.slope > -0.5

    def test_unsorted_input(self):
        """Test samples are sorted by lambda first."""
        values = _power_law(-0.7)
        fit = decay_exponent_fit(LAMBDAS[::-1], values[::-1])
        assert fit.slope == pytest.approx(-0.7, abs=1e-10)

    @pytest.mark.parametrize(
        "lambdas, values", [([4.0], [0.1]), ([2.0, 4.0], [0.1, 0.0]), ([1.0, 4.0], [0.1, 0.05])]
    )
    def test_invalid_samples(self, lambdas, values):
        """Test short grids, zero values and lambda <= 1 raise."""
        with pytest.raises(ValueError):
            decay_exponent_fit(lambdas, values)


class TestCompareTo:
    """Test cases for decay verdicts."""

    def test_pass(self):
        """Test slope -7/10 matches h = 10/7."""
        verdict = compare_to(decay_exponent_fit(LAMBDAS, _power_law(-0.7)), Fraction(10, 7), 0)
        assert verdict.verdict is Verdict.PASS
        assert verdict.reason == "WithinTolerance"

    def test_log_corrected_pass(self):
        """Test nu = 1 uses the corrected slope against h = 2."""
        verdict = compare_to(decay_exponent_fit(LAMBDAS, _power_law(-0.5, 1), nu=1), Fraction(2), 1)
        assert verdict.verdict is Verdict.PASS

    def test_mismatch(self):
        """Test slope -1/2 against h = 10/7 fails."""
        verdict = compare_to(decay_exponent_fit(LAMBDAS, _power_law(-0.5)), Fraction(10, 7), 0)
        assert verdict.verdict is Verdict.FAIL
        assert verdict.reason == "SlopeMismatch"
        assert verdict.observed_slope == pytest.approx(-0.5)

    def test_short_grid(self):
        """Test fewer than eight samples are inconclusive."""
        fit = decay_exponent_fit(LAMBDAS[:5], _power_law(-0.7)[:5])
        assert compare_to(fit, Fraction(10, 7), 0).reason == "ShortGrid"
        assert compare_to(None, Fraction(10, 7), 0).verdict is Verdict.INCONCLUSIVE

    def test_poor_fit(self):
        """Test strongly oscillating magnitudes are inconclusive."""
        wobble = 1 + 0.9 * np.array([(-1) ** k for k in range(10)])
        verdict = compare_to(decay_exponent_fit(LAMBDAS, _power_law(-0.7) * wobble), Fraction(10, 7), 0)
        assert verdict.verdict is Verdict.INCONCLUSIVE
        assert verdict.reason == "PoorFit"

    def test_non_compact_face(self):
        """Test a non-compact adapted principal face is inconclusive."""
        fit = decay_exponent_fit(LAMBDAS, _power_law(-0.7))
        verdict = compare_to(fit, Fraction(10, 7), 0, compact_principal_face=False)
        assert verdict.reason == "NonCompactPrincipalFace"
        assert verdict.observed_slope is None
