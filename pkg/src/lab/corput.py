"""Numerical checks of the van der Corput bound for one-dimensional oscillatory integrals."""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import Polynomial
from scipy import special

from errors import HypothesisUnverifiedError
from lab.quadrature import QuadratureConfig, oscillatory_integral_1d

logger = logging.getLogger(__name__)

FRESNEL_LIMIT = math.sqrt(math.pi) / 2
HYPOTHESIS_SAMPLES = 1001
NORM_SAMPLES = 4001


@dataclass(frozen=True)
class CorputReport:
    order: int
    lambdas: Tuple[float, ...]
    statistics: Tuple[float, ...]
    sup_statistic: float
    constant: float
    amplitude_norm: float
    bound: float
    within_bound: bool
    oracle_deviation: Optional[float] = None


def van_der_corput_constant(order: int) -> float:
    """C_M = 5 * 2^(M-1) - 2."""
    if order < 1:
        raise ValueError(f"Order must be a positive integer, got {order}")
    return 5 * 2 ** (order - 1) - 2


def fresnel_oracle(lam: float) -> complex:
    """Exact integral of exp(i*lam*s^2) over [0, 1] via scipy's Fresnel integrals."""
    x = math.sqrt(2 * lam / math.pi)
    s, c = special.fresnel(x)
    return math.sqrt(math.pi / (2 * lam)) * complex(c, s)


def polynomial_type_check(f: Polynomial, order: int, interval: Tuple[float, float]) -> float:
    """
    Smallest |f^(M)| on a sample grid of the interval.

    Raises:
        HypothesisUnverifiedError: If it drops below 1
    """
    grid = np.linspace(interval[0], interval[1], HYPOTHESIS_SAMPLES)
    minimum = float(np.abs(f.deriv(order)(grid)).min())
    if minimum < 1:
        raise HypothesisUnverifiedError(
            f"|f^({order})| >= 1 fails on the sample grid (min {minimum:.3g})",
            {"order": order, "min_derivative": minimum},
        )
    return minimum


def amplitude_norm(g: Callable[[np.ndarray], np.ndarray], interval: Tuple[float, float]) -> float:
    """||g||_inf + ||g'||_1, the latter as the total variation on a fine grid."""
    grid = np.linspace(interval[0], interval[1], NORM_SAMPLES)
    values = np.broadcast_to(g(grid), grid.shape)
    return float(np.abs(values).max() + np.abs(np.diff(values)).sum())


def van_der_corput_check(
    f: Polynomial,
    order: int,
    lambdas: Sequence[float],
    g: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    interval: Tuple[float, float] = (0.0, 1.0),
    config: Optional[QuadratureConfig] = None,
) -> CorputReport:
    """
    sup over lambda of lambda^(1/M) |integral of exp(i*lambda*f) g| against C_M (||g||_inf + ||g'||_1).

    For f = s^2 and g = 1 on [0, 1] the quadrature is also compared with the
    Fresnel oracle and the largest relative deviation is reported.

    Raises:
        HypothesisUnverifiedError: If |f^(M)| >= 1 fails on the sample grid
    """
    polynomial_type_check(f, order, interval)
    g = g or (lambda t: np.ones_like(t))
    constant = van_der_corput_constant(order)
    norm = amplitude_norm(g, interval)

    statistics = []
    deviations = []
    fresnel_case = (
        tuple(interval) == (0.0, 1.0)
        and f.coef.shape == (3,)
        and np.allclose(f.coef, [0, 0, 1])
        and float(np.ptp(np.broadcast_to(g(np.linspace(0, 1, 11)), (11,)))) == 0.0
    )
    for lam in lambdas:
        result = oscillatory_integral_1d(f, g, lam, interval, config)
        statistics.append(lam ** (1 / order) * result.magnitude)
        if fresnel_case:
            exact = fresnel_oracle(lam) * float(g(np.zeros(1))[0])
            deviations.append(abs(result.value - exact) / abs(exact))

    sup = max(statistics) if statistics else 0.0
    bound = constant * norm
    logger.info(f"van der Corput M={order}: sup statistic {sup:.6g}, bound {bound:.6g}")
    return CorputReport(
        order=order,
        lambdas=tuple(float(v) for v in lambdas),
        statistics=tuple(statistics),
        sup_statistic=sup,
        constant=float(constant),
        amplitude_norm=norm,
        bound=bound,
        within_bound=sup <= bound,
        oracle_deviation=max(deviations) if deviations else None,
    )
