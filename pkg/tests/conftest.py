"""
Shared pytest fixtures for unit tests.
"""

import os
import sys
from pathlib import Path

import pytest

# Load .env file from project root if it exists
# This ensures tests use the same configuration as the application
project_root = Path(__file__).parent.parent
env_file = project_root / ".env"
if env_file.exists():
    from dotenv import load_dotenv

    load_dotenv(env_file, override=False)  # Don't override existing env vars

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from algebra.parser import parse_polynomial  # noqa: E402
from pipeline.analysis import analyze  # noqa: E402

E1_TEXT = "x2^2 - 2 x1^2 x2 + x1^4 + x1^5"
E2_TEXT = "x1 (x2 - x1^2)^2 + x1^6"

# phase text -> (h, nu) for the decay acceptance runs
DECAY_CORPUS = {
    "x1^2 + x2^2": (1, 0),
    "x2^2 + x1^4": (4 / 3, 0),
    E1_TEXT: (10 / 7, 0),
    E2_TEXT: (12 / 7, 0),
}


@pytest.fixture
def e1_text():
    """The A4 example (x2 - x1^2)^2 + x1^5 in expanded form."""
    return E1_TEXT


@pytest.fixture
def e2_text():
    """The D7 example x1 (x2 - x1^2)^2 + x1^6."""
    return E2_TEXT


@pytest.fixture
def e1():
    return parse_polynomial(E1_TEXT)


@pytest.fixture
def e2():
    return parse_polynomial(E2_TEXT)


@pytest.fixture
def e1_analysis(e1):
    return analyze(e1)


@pytest.fixture
def e2_analysis(e2):
    return analyze(e2)


@pytest.fixture
def circle_analysis():
    """An adapted phase with h = 1."""
    return analyze(parse_polynomial("x1^2 + x2^2"))


@pytest.fixture
def clean_env(monkeypatch):
    """Remove every RESTRIKT_* variable so defaults apply."""
    for key in list(os.environ):
        if key.startswith("RESTRIKT_"):
            monkeypatch.delenv(key, raising=False)
    return monkeypatch


@pytest.fixture
def decay_corpus():
    """Phase text -> (h, nu) for the decay acceptance runs."""
    return dict(DECAY_CORPUS)
