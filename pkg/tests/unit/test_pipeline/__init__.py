"""Unit tests for the analysis pipeline and reports."""
