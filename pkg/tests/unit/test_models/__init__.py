"""Unit tests for report models."""
