"""Exact sparse bivariate polynomials, parsing and shears."""
