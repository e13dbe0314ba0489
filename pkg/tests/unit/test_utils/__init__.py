"""Unit tests for logging helpers."""
