"""Unit tests for report assembly and JSON rendering."""

import hashlib
import json
import os
import sys
from fractions import Fraction

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "..", "..", "src"))

from pipeline.report import build_report, canonical_json, render_json, restriction_height_model


class TestBuildReport:
    """Test cases for build_report."""

    def test_e1_exact_fields(self, e1_analysis):
        """Test the serialized invariants of E1."""
        body = build_report(e1_analysis).model_dump(mode="json")
        assert body["heights"]["h"] == "10/7"
        assert body["heights"]["h_lin"] == "4/3"
        assert body["polyhedron"]["slopes"] == ["0/1", "2/1", "inf"]
        assert body["psi"] == "x1^2"
        assert body["phi_a"] == "y2^2 + y1^5"
        assert body["adapted"] is False

    def test_e1_polygon_and_class(self, e1_analysis):
        """Test polygon vertices, singularity class and critical exponent."""
        body = build_report(e1_analysis).model_dump(mode="json")
        assert body["polygon"]["vertices"] == [["0/1", "0/1"], ["1/2", "0/1"], ["1/6", "1/4"], ["0/1", "7/20"]]
        assert body["singularity"]["label"] == "A4"
        assert body["singularity"]["critical_exponent"] == ["1/6", "1/4"]
        assert body["singularity"]["on_condition_lines"] is True
        assert body["singularity_note"] is None

    def test_e1_augmented_blocks(self, e1_analysis):
        """Test anchor, K breakpoints and h^res_1."""
        body = build_report(e1_analysis).model_dump(mode="json")
        assert body["augmented"]["anchor"] == [0, 2]
        assert body["kfunction"]["breakpoints"] == [["1/5", "1/2"], ["1/4", "1/2"]]
        assert body["restriction_height"] == {
            "r": "1/1",
            "value": "4/3",
            "argmax": "kappa",
            "geometric": "4/3",
            "diagonal_threshold": "14/3",
        }

    def test_adapted_report(self, circle_analysis):
        """Test adapted phases skip the augmented blocks."""
        report = build_report(circle_analysis)
        assert report.augmented is None
        assert report.singularity is None
        assert report.singularity_note == "NotApplicable"
        assert report.polygon.ptilde_excluded_reason == "HEqualsOne"

    def test_restriction_height_for_other_ratio(self, e1_analysis):
        """Test r = 5 uses the edge term and its own diagonal threshold."""
        model = restriction_height_model(e1_analysis, Fraction(5))
        assert (model.value, model.argmax, model.diagonal_threshold) == (Fraction(3, 5), "edge:1", Fraction(16, 5))


class TestRenderJson:
    """Test cases for the canonical JSON document."""

    def test_document_layout(self, e1_analysis):
        """Test report and meta blocks with a trailing newline."""
        text = render_json(build_report(e1_analysis))
        assert text.endswith("}\n")
        document = json.loads(text)
        assert set(document) == {"report", "meta"}
        assert document["meta"]["tool_version"] == "0.1.0"

    def test_hash_covers_canonical_body(self, e1_analysis):
        """Test the sha256 of the compact sorted body."""
        document = json.loads(render_json(build_report(e1_analysis)))
        expected = hashlib.sha256(canonical_json(document["report"]).encode("utf-8")).hexdigest()
        assert document["meta"]["report_sha256"] == expected

    def test_deterministic(self, e1_analysis, e2_analysis):
        """Test byte-identical output for equal input and distinct hashes otherwise."""
        first = render_json(build_report(e1_analysis))
        assert render_json(build_report(e1_analysis)) == first
        other = json.loads(render_json(build_report(e2_analysis)))
        assert other["meta"]["report_sha256"] != json.loads(first)["meta"]["report_sha256"]

    def test_canonical_json_is_compact(self):
        """Test sorted keys without whitespace."""
        assert canonical_json({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'
