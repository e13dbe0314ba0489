"""Log-log decay fits of |J(lambda)| against the predicted rate lambda^(-1/h) (log lambda)^nu."""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)

FIT_POINTS = 6
MIN_SAMPLES = 8
MIN_R2 = 0.98
DEFAULT_TOL = 0.05


class Verdict(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class DecayFit:
    """Least-squares line through the top dyadic samples of log|J| against log lambda."""

    lambdas: Tuple[float, ...]
    values: Tuple[float, ...]
    slope: float
    log_corrected_slope: float
    r2: float
    nu: int
    samples: int


@dataclass(frozen=True)
class DecayVerdict:
    verdict: Verdict
    reason: str
    expected_slope: float
    observed_slope: Optional[float]
    tolerance: float


def _line_fit(x: np.ndarray, y: np.ndarray) -> Tuple[float, float]:
    slope, intercept = np.polyfit(x, y, 1)
    residual = y - (slope * x + intercept)
    total = np.sum((y - y.mean()) ** 2)
    r2 = 1.0 - float(np.sum(residual**2) / total) if total > 0 else 1.0
    return float(slope), r2


def decay_exponent_fit(lambdas: Sequence[float], values: Sequence[float], nu: int = 0) -> DecayFit:
    """
    Fit the decay exponent on the largest FIT_POINTS frequencies.

    The log-corrected fit regresses log|J| - nu*log(log lambda) on log lambda, so
    the coefficient of the logarithmic factor is fixed to nu rather than fitted.

    Raises:
        ValueError: If fewer than two samples are given or a value is not positive
    """
    order = np.argsort(np.asarray(lambdas, dtype=float))
    lam = np.asarray(lambdas, dtype=float)[order]
    val = np.asarray(values, dtype=float)[order]
    if lam.size < 2:
        raise ValueError("Need at least two samples to fit a decay exponent")
    if np.any(val <= 0) or np.any(lam <= 1):
        raise ValueError("Decay fit needs lambda > 1 and |J| > 0")

    top_lam, top_val = lam[-FIT_POINTS:], val[-FIT_POINTS:]
    x = np.log(top_lam)
    y = np.log(top_val)
    slope, raw_r2 = _line_fit(x, y)
    corrected_slope, corrected_r2 = _line_fit(x, y - nu * np.log(x))
    return DecayFit(
        lambdas=tuple(float(v) for v in top_lam),
        values=tuple(float(v) for v in top_val),
        slope=slope,
        log_corrected_slope=corrected_slope,
        r2=corrected_r2 if nu else raw_r2,
        nu=nu,
        samples=int(lam.size),
    )


def compare_to(
    fit: Optional[DecayFit], h: Fraction, nu: int, tol: float = DEFAULT_TOL, compact_principal_face: bool = True
) -> DecayVerdict:
    """
    Verdict on the fitted slope against -1/h.

    PASS iff |slope + 1/h| <= tol, using the log-corrected slope when nu = 1.
    Short grids, poor fits and non-compact principal faces of the adapted phase
    are INCONCLUSIVE.
    """
    expected = -1.0 / float(h)
    if not compact_principal_face:
        return DecayVerdict(Verdict.INCONCLUSIVE, "NonCompactPrincipalFace", expected, None, tol)
    if fit is None or fit.samples < MIN_SAMPLES:
        return DecayVerdict(Verdict.INCONCLUSIVE, "ShortGrid", expected, None, tol)
    observed = fit.log_corrected_slope if nu else fit.slope
    if fit.r2 < MIN_R2:
        return DecayVerdict(Verdict.INCONCLUSIVE, "PoorFit", expected, observed, tol)
    if abs(observed - expected) <= tol:
        return DecayVerdict(Verdict.PASS, "WithinTolerance", expected, observed, tol)
    logger.warning(f"Decay slope {observed:.4f} differs from {expected:.4f} by more than {tol}")
    return DecayVerdict(Verdict.FAIL, "SlopeMismatch", expected, observed, tol)
