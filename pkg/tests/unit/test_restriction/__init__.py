"""Unit tests for necessary conditions and singularity classes."""
