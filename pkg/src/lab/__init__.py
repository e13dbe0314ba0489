"""Numerical checks: oscillatory integrals, decay fits, van der Corput, Airy and Knapp boxes."""
