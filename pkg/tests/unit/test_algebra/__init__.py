"""Unit tests for exact polynomial algebra."""
