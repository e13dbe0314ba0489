"""Unit tests for Newton, adapted and augmented geometry."""
