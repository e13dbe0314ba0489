"""Necessary conditions on restriction exponents and the A/D classification."""
