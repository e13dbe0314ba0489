"""Unit tests for the numerical lab."""
