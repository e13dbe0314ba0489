"""
Integration tests: acceptance runs over the phase corpus.
"""
