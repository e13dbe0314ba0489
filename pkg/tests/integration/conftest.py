"""
Shared pytest fixtures for integration tests.
"""

import os
import random
import sys
from pathlib import Path

import pytest

# Load .env file from project root if it exists
# This ensures integration tests use the same configuration as the application
project_root = Path(__file__).parent.parent.parent
env_file = project_root / ".env"
if env_file.exists():
    from dotenv import load_dotenv

    load_dotenv(env_file, override=False)  # Don't override existing env vars

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "..", "src"))

from algebra.parser import parse_polynomial  # noqa: E402
from pipeline.analysis import analyze  # noqa: E402

COEFFICIENTS = (-3, -2, -1, 1, 2, 3)
MAX_DEGREE = 12


def normal_form_text(kind: str, m: int, n: int) -> str:
    """(x2 - x1^m)^2 + x1^n for type A, x1 (x2 - x1^m)^2 + x1^n for type D."""
    square = f"(x2 - x1^{m})^2"
    return f"{square} + x1^{n}" if kind == "A" else f"x1 {square} + x1^{n}"


def normal_form_corpus():
    """Every (kind, m, n) of the parameter sweep: m in 2..4, seven values of n each."""
    cases = []
    for m in (2, 3, 4):
        cases += [("A", m, n) for n in range(2 * m + 1, 2 * m + 8)]
        cases += [("D", m, n) for n in range(2 * m + 2, 2 * m + 9)]
    return cases


def random_phase_text(rng: random.Random) -> str:
    """
    A sparse phase of degree <= MAX_DEGREE with no constant or linear term.

    Roughly a third of the draws are sheared squares so non-adapted cases show up.
    """
    if rng.random() < 0.35:
        k = rng.randint(1, 3)
        c = rng.choice(COEFFICIENTS)
        n = rng.randint(2 * k + 1, MAX_DEGREE)
        return f"(x2 - {c} x1^{k})^2 + {rng.choice(COEFFICIENTS)} x1^{n}"

    terms = {}
    for _ in range(rng.randint(1, 4)):
        a = rng.randint(0, MAX_DEGREE)
        b = rng.randint(0, MAX_DEGREE - a)
        if a + b >= 2:
            terms[(a, b)] = rng.choice(COEFFICIENTS)
    if not terms:
        terms[(0, 2)] = 1
    return " + ".join(f"{c} x1^{a} x2^{b}" for (a, b), c in sorted(terms.items()))


@pytest.fixture(scope="session")
def normal_form_analyses():
    """(kind, m, n, Analysis) for the whole parameter sweep, computed once."""
    return [(kind, m, n, analyze(parse_polynomial(normal_form_text(kind, m, n)))) for kind, m, n in normal_form_corpus()]


@pytest.fixture(scope="session")
def random_phases():
    rng = random.Random(20240611)
    return [random_phase_text(rng) for _ in range(200)]
