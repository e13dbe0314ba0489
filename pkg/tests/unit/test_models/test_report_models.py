"""Unit tests for the pydantic report models."""

import os
import sys
from fractions import Fraction

import pytest
from pydantic import ValidationError

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "..", "..", "src"))

from algebra.numbers import INF
from geometry.newton import Weight, build_newton_polyhedron
from models.report import (
    AdaptednessModel,
    PolyhedronModel,
    RestrictionHeightModel,
    RestrictionHeightTable,
    VerificationReport,
    WeightModel,
    rational_pair,
)


class TestRationalSerialization:
    """Test cases for exact values in reports."""

    def test_weight_with_infinity(self):
        """Test inf and integers keep the num/den form."""
        dumped = WeightModel.of(Weight(INF, Fraction(0))).model_dump(mode="json")
        assert dumped == {"k1": "inf", "k2": "0/1"}

    def test_polyhedron_model(self, e1):
        """Test vertices stay integers while weights become strings."""
        dumped = PolyhedronModel.of(build_newton_polyhedron(e1.support())).model_dump(mode="json")
        assert dumped["vertices"] == [[0, 2], [4, 0]]
        assert dumped["weights"][1] == {"k1": "1/4", "k2": "1/2"}

    def test_optional_rational(self):
        """Test a missing root serializes as null."""
        dumped = AdaptednessModel(adapted=True, reason="NoExcessRoot").model_dump(mode="json")
        assert dumped["root"] is None
        assert dumped["factors"] == []

    def test_rational_pair(self):
        """Test pairs are coerced to Fractions."""
        assert rational_pair((1, "1/4")) == [Fraction(1), Fraction(1, 4)]


class TestReportModels:
    """Test cases for model behaviour."""

    def test_models_are_frozen(self):
        """Test reports cannot be mutated after construction."""
        model = WeightModel(k1=Fraction(1, 4), k2=Fraction(1, 2))
        with pytest.raises(ValidationError):
            model.k1 = Fraction(1)

    def test_table_carries_tool_version(self):
        """Test the default version stamp."""
        row = RestrictionHeightModel(
            r=Fraction(1), value=Fraction(4, 3), argmax="kappa", geometric=Fraction(4, 3), diagonal_threshold=Fraction(14, 3)
        )
        dumped = RestrictionHeightTable(phase="x2^2 + x1^5", rows=[row]).model_dump(mode="json")
        assert dumped["tool_version"] == "0.1.0"
        assert dumped["rows"][0]["diagonal_threshold"] == "14/3"

    def test_verification_report(self):
        """Test verdict blocks keep float details."""
        report = VerificationReport(check="decay", verdict="PASS", reason="WithinTolerance", details={"slope": -0.7})
        assert report.model_dump(mode="json")["details"] == {"slope": -0.7}
