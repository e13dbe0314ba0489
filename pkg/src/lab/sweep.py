"""Parallel dyadic lambda sweeps of the oscillatory surface integral."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence

from algebra.numbers import format_float
from algebra.polynomial import BivariatePolynomial
from lab.quadrature import VERTICAL, QuadratureConfig, QuadratureResult, oscillatory_surface_integral
from utils.observability import track_latency

logger = logging.getLogger(__name__)

CSV_HEADER = ["lambda", "re", "im", "abs", "err_est"]


@dataclass(frozen=True)
class SweepSample:
    index: int
    lam: float
    result: QuadratureResult


def dyadic_grid(exponents: Iterable[int]) -> List[float]:
    return [float(2**k) for k in exponents]


@track_latency("lab")
def decay_sweep(
    phi: BivariatePolynomial,
    exponents: Sequence[int],
    threads: int = 1,
    config: Optional[QuadratureConfig] = None,
    xi_dir=VERTICAL,
) -> List[SweepSample]:
    """
    Evaluate J(2^k) for every k; samples come back in grid order whatever the thread count.

    Each evaluation is pure, so a parallel sweep equals the serial one.
    """
    config = config or QuadratureConfig.from_runtime()
    lambdas = dyadic_grid(exponents)

    def run(index: int) -> SweepSample:
        return SweepSample(index, lambdas[index], oscillatory_surface_integral(phi, lambdas[index], xi_dir, config))

    if threads <= 1:
        samples = [run(i) for i in range(len(lambdas))]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            samples = list(pool.map(run, range(len(lambdas))))
    capped = [s.lam for s in samples if s.result.cap_hit]
    if capped:
        logger.warning(f"Subdivision cap hit for lambda in {capped}")
    return sorted(samples, key=lambda s: s.index)


def sweep_csv_rows(samples: Sequence[SweepSample]) -> List[List[str]]:
    return [
        [
            format_float(s.lam),
            format_float(s.result.value.real),
            format_float(s.result.value.imag),
            format_float(s.result.magnitude),
            format_float(s.result.error_estimate),
        ]
        for s in samples
    ]
