"""Scaling collapse of cubic oscillatory integrals onto the Airy profile."""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import Polynomial
from scipy import special

from lab.decay import Verdict
from lab.quadrature import QuadratureConfig, bump, oscillatory_integral_1d

logger = logging.getLogger(__name__)

TREND_POINTS = 4
DEFAULT_RADIUS = 0.25


@dataclass(frozen=True)
class AiryReport:
    lambdas: Tuple[float, ...]
    v_grid: Tuple[float, ...]
    scaled: Tuple[Tuple[complex, ...], ...]
    spreads: Tuple[float, ...]
    max_spread: float
    profile_deviation: float
    verdict: Verdict


def airy_limit_profile(v, b0: float) -> np.ndarray:
    """
    Limit of lambda^(1/3) J(lambda, v lambda^(-2/3)): the integral of exp(i(b0 s^3 - v s)) over the line,
    2*pi*(3|b0|)^(-1/3) * Ai(-sign(b0) * v * (3|b0|)^(-1/3)).
    """
    if b0 == 0:
        raise ValueError("b(0) must be nonzero")
    scale = (3 * abs(b0)) ** (-1 / 3)
    ai, _, _, _ = special.airy(-math.copysign(1.0, b0) * np.asarray(v, dtype=float) * scale)
    return 2 * math.pi * scale * ai


def scaled_airy_integral(
    b: Polynomial, lam: float, v: float, radius: float = DEFAULT_RADIUS, config: Optional[QuadratureConfig] = None
) -> complex:
    """lambda^(1/3) * integral of exp(i*lambda*(b(t) t^3 - u t)) chi(t) with u = v lambda^(-2/3)."""
    u = v * lam ** (-2 / 3)
    result = oscillatory_integral_1d(
        lambda t: b(t) * t**3 - u * t, lambda t: bump(t, radius), lam, (-radius, radius), config
    )
    return lam ** (1 / 3) * result.value


def airy_collapse_check(
    b: Polynomial,
    lambdas: Sequence[float],
    v_grid: Sequence[float],
    radius: float = DEFAULT_RADIUS,
    config: Optional[QuadratureConfig] = None,
) -> AiryReport:
    """
    Measure how lambda^(1/3) J(lambda, v lambda^(-2/3)) settles as lambda grows at fixed v.

    The spread between consecutive frequencies is the largest difference over the
    v grid. PASS iff the spreads over the top TREND_POINTS frequencies strictly
    decrease; a single frequency has spread 0 and is INCONCLUSIVE.
    """
    lambdas = sorted(float(v) for v in lambdas)
    scaled = [[scaled_airy_integral(b, lam, v, radius, config) for v in v_grid] for lam in lambdas]
    values = np.asarray(scaled, dtype=complex).reshape(len(lambdas), len(v_grid))

    spreads = [float(np.abs(values[k + 1] - values[k]).max()) for k in range(len(lambdas) - 1)]
    profile = airy_limit_profile(v_grid, float(b(0.0)))
    deviation = float(np.abs(values[-1] - profile).max()) if len(lambdas) else 0.0

    trend = spreads[-(TREND_POINTS - 1) :]
    if len(trend) < 2:
        verdict = Verdict.INCONCLUSIVE
    elif all(later < earlier for earlier, later in zip(trend, trend[1:])):
        verdict = Verdict.PASS
    else:
        verdict = Verdict.FAIL
    logger.info(f"Airy collapse: spreads {trend}, profile deviation {deviation:.3g}, {verdict.value}")
    return AiryReport(
        lambdas=tuple(lambdas),
        v_grid=tuple(float(v) for v in v_grid),
        scaled=tuple(tuple(complex(z) for z in row) for row in values),
        spreads=tuple(spreads),
        max_spread=max(spreads) if spreads else 0.0,
        profile_deviation=deviation,
        verdict=verdict,
    )
