"""Panel Gauss-Legendre quadrature for oscillatory integrals with polynomial phases."""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate, special

from algebra.polynomial import BivariatePolynomial
from config import RuntimeConfig, get_config
from errors import ConfigError
from utils.observability import track_latency

logger = logging.getLogger(__name__)

ORDER = 12
LOW_ORDER = 6
CHUNK = 1 << 14
WINDOW_CENTER = 72.0
WINDOW_WIDTH = 12.0
# erfc(6) < 3e-17: beyond this the sublevel window is zero in double precision
WINDOW_CUTOFF = WINDOW_CENTER + 6 * WINDOW_WIDTH
VERTICAL = (0.0, 0.0, 1.0)


@lru_cache(maxsize=None)
def _rule(order: int, low_order: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Panel sample points: high-order nodes, low-order nodes, then both endpoints."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    low_nodes, low_weights = np.polynomial.legendre.leggauss(low_order)
    points = np.concatenate([nodes, low_nodes, [-1.0, 1.0]])
    return points, weights, low_weights


@dataclass(frozen=True)
class QuadratureConfig:
    """
    Quadrature settings.

    Panels are halved until the phase varies by at most ``panel_phase_budget``
    radians across each of them and the order-12/order-6 difference is below
    tolerance, or until ``max_subdivisions`` panels have been used in one pass.
    """

    panel_phase_budget: float = math.pi / 2
    max_subdivisions: int = 1 << 20
    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    rho: float = 0.5

    def __post_init__(self):
        if not 0 < self.panel_phase_budget <= math.pi:
            raise ConfigError(f"panel_phase_budget must be in (0, pi], got {self.panel_phase_budget}")
        if self.max_subdivisions < 1:
            raise ConfigError(f"max_subdivisions must be positive, got {self.max_subdivisions}")
        if self.abs_tol <= 0 or self.rho <= 0:
            raise ConfigError("abs_tol and rho must be positive")

    @classmethod
    def from_runtime(cls, config: Optional[RuntimeConfig] = None) -> "QuadratureConfig":
        config = config or get_config()
        return cls(
            panel_phase_budget=config.get_float("PANEL_PHASE_BUDGET"),
            max_subdivisions=config.get_int("MAX_SUBDIVISIONS"),
            abs_tol=config.get_float("ABS_TOL"),
            rho=config.get_float("BUMP_RADIUS"),
        )


@dataclass(frozen=True)
class QuadratureResult:
    """
    Value of an oscillatory integral.

    ``error_estimate`` bounds the discretization error only. When ``windowed`` is
    set the integrand was changed by the sublevel window, and the part of the
    integral it removes is not included; pass ``window=False`` to measure it.
    """

    value: complex
    error_estimate: float
    panels: int
    cap_hit: bool
    windowed: bool = False

    @property
    def magnitude(self) -> float:
        return abs(self.value)


def bump(t, rho: float) -> np.ndarray:
    """exp(1 - 1/(1 - (t/rho)^2)) on |t| < rho, zero outside; equals 1 at 0."""
    s = np.asarray(t, dtype=float) / rho
    inside = np.abs(s) < 1
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        value = np.exp(1 - 1 / (1 - s * s))
    return np.where(inside, value, 0.0)


def bump_mass(rho: float) -> float:
    """Integral of the tensor bump over the plane."""
    mass, _ = integrate.quad(lambda t: float(bump(t, rho)), -rho, rho, epsabs=1e-14, epsrel=1e-12)
    return mass * mass


def sublevel_window(s: np.ndarray) -> np.ndarray:
    """Smooth cutoff in s = lambda*|phi|: 1 well below WINDOW_CENTER, 0 above WINDOW_CUTOFF."""
    return 0.5 * special.erfc((s - WINDOW_CENTER) / WINDOW_WIDTH)


Fields = Callable[[np.ndarray], Tuple[np.ndarray, np.ndarray]]


@dataclass
class _Sweep:
    values: np.ndarray
    error: float
    panels: int
    cap_hit: bool


def panel_sweep(
    fields: Fields,
    a: float,
    b: float,
    lam: float,
    config: QuadratureConfig,
    rows: int = 1,
    skip_above: Optional[float] = None,
) -> _Sweep:
    """
    Integrate exp(i*lam*F) * A over [a, b] for ``rows`` integrands at once.

    ``fields`` maps panel sample points of shape (P, N) to phase and amplitude
    arrays of shape (P, rows, N). Panels are processed level by level. With
    ``skip_above`` set, a panel whose lam*|F| provably stays above it for every
    row contributes nothing.
    """
    points, weights, low_weights = _rule(ORDER, LOW_ORDER)
    high, low = slice(0, ORDER), slice(ORDER, ORDER + LOW_ORDER)
    total = np.zeros(rows, dtype=complex)
    error = 0.0
    panels = 0
    cap_hit = False
    width = b - a
    lo, hi = np.array([a], dtype=float), np.array([b], dtype=float)

    while lo.size:
        next_lo, next_hi = [], []
        queued = 0
        for start in range(0, lo.size, CHUNK):
            left, right = lo[start : start + CHUNK], hi[start : start + CHUNK]
            mid, half = (left + right) / 2, (right - left) / 2
            phase, amplitude = fields(mid[:, None] + half[:, None] * points[None, :])

            spread = phase.max(axis=2) - phase.min(axis=2)
            active = np.ones(left.size, dtype=bool)
            if skip_above is not None:
                floor = lam * (np.abs(phase).min(axis=2) - spread)
                active = ~np.all(floor > skip_above, axis=1)

            integrand = np.exp(1j * lam * phase[active]) * amplitude[active]
            fine = np.einsum("pkn,n->pk", integrand[..., high], weights) * half[active, None]
            coarse = np.einsum("pkn,n->pk", integrand[..., low], low_weights) * half[active, None]
            local_error = np.abs(fine - coarse).max(axis=1)
            tolerance = np.maximum(
                config.abs_tol * 2 * half[active] / width, 64 * np.finfo(float).eps * np.abs(fine).max(axis=1)
            )

            oscillation = lam * spread[active].max(axis=1)
            split = (oscillation > config.panel_phase_budget) | (local_error > tolerance)
            split &= half[active] > 1e-12 * width
            # accepted, queued for the next level and still unvisited panels
            outstanding = lo.size - start - left.size
            if panels + active.sum() + split.sum() + queued + outstanding > config.max_subdivisions:
                split[:] = False
                cap_hit = True

            done = ~split
            total += fine[done].sum(axis=0)
            error += float(local_error[done].sum())
            panels += int(done.sum())
            queued += 2 * int(split.sum())

            keep_left, keep_mid, keep_right = left[active][split], mid[active][split], right[active][split]
            next_lo.extend([keep_left, keep_mid])
            next_hi.extend([keep_mid, keep_right])
        lo = np.concatenate(next_lo) if next_lo else np.empty(0)
        hi = np.concatenate(next_hi) if next_hi else np.empty(0)

    return _Sweep(total, error, panels, cap_hit)


def oscillatory_integral_1d(
    phase: Callable[[np.ndarray], np.ndarray],
    amplitude: Callable[[np.ndarray], np.ndarray],
    lam: float,
    interval: Tuple[float, float],
    config: Optional[QuadratureConfig] = None,
) -> QuadratureResult:
    """Integral of exp(i*lam*f(s)) * g(s) over an interval."""
    config = config or QuadratureConfig.from_runtime()

    def fields(t: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        return phase(t)[:, None, :], np.broadcast_to(amplitude(t), t.shape)[:, None, :]

    sweep = panel_sweep(fields, interval[0], interval[1], lam, config)
    if sweep.cap_hit:
        logger.warning(f"Subdivision cap hit at lambda={lam}")
    return QuadratureResult(complex(sweep.values[0]), sweep.error, sweep.panels, sweep.cap_hit)


def _validate_direction(xi_dir: Sequence[float]) -> np.ndarray:
    xi = np.asarray(xi_dir, dtype=float)
    if xi.shape != (3,) or not math.isclose(float(np.linalg.norm(xi)), 1.0, rel_tol=1e-9):
        raise ValueError(f"xi_dir must be a unit 3-vector, got {tuple(xi_dir)}")
    return xi


@track_latency("lab")
def oscillatory_surface_integral(
    phi: BivariatePolynomial,
    lam: float,
    xi_dir: Sequence[float] = VERTICAL,
    config: Optional[QuadratureConfig] = None,
    window: bool = True,
) -> QuadratureResult:
    """
    J(lam) = integral of exp(i*lam*(xi1*x1 + xi2*x2 + xi3*phi(x))) * eta(x) over the plane.

    The x1 integral is adaptive: each panel is compared with its two halves, and
    that difference is the reported error estimate. The x2 integrals are
    vectorized over the x1 nodes of a panel. In the vertical direction at large
    lam the integrand is multiplied by a smooth window in lam*|phi| which removes
    the non-stationary region |lam*phi| >> 1. The small change this makes to J is
    not part of the error estimate.

    Args:
        phi: Phase polynomial
        lam: Frequency, lam >= 0
        xi_dir: Unit direction of xi
        config: Quadrature settings; runtime defaults when omitted
        window: Allow the sublevel window; off means the plain integrand at any lam

    Returns:
        QuadratureResult with the value, error estimate, panel count and cap flag
    """
    if lam < 0:
        raise ValueError(f"lambda must be non-negative, got {lam}")
    config = config or QuadratureConfig.from_runtime()
    xi = _validate_direction(xi_dir)
    rho = config.rho

    grid = np.linspace(-rho, rho, 65)
    phi_max = float(np.abs(phi.evaluate_array(grid[:, None], grid[None, :])).max())
    windowed = window and tuple(xi) == VERTICAL and lam * phi_max > WINDOW_CUTOFF

    def phase_at(x1: np.ndarray, x2: np.ndarray) -> np.ndarray:
        value = xi[2] * phi.evaluate_array(x1, x2)
        if xi[0] or xi[1]:
            value = value + xi[0] * x1 + xi[1] * x2
        return value

    panels = 0
    cap_hit = False

    def inner(x1: np.ndarray) -> np.ndarray:
        nonlocal panels, cap_hit

        def fields(t: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
            f = phase_at(x1[None, :, None], t[:, None, :])
            amp = np.broadcast_to(bump(t, rho)[:, None, :], f.shape)
            if windowed:
                amp = amp * sublevel_window(lam * np.abs(f))
            return f, amp

        sweep = panel_sweep(fields, -rho, rho, lam, config, rows=x1.size, skip_above=WINDOW_CUTOFF if windowed else None)
        panels += sweep.panels
        cap_hit = cap_hit or sweep.cap_hit
        return sweep.values

    nodes, weights = np.polynomial.legendre.leggauss(ORDER)

    def outer_panel(a: float, b: float) -> complex:
        mid, half = (a + b) / 2, (b - a) / 2
        x1 = mid + half * nodes
        return complex(half * np.sum(weights * bump(x1, rho) * inner(x1)))

    edges = np.linspace(-rho, rho, 9)
    stack = [(a, b, outer_panel(a, b)) for a, b in zip(edges[:-1], edges[1:])]
    value = 0j
    error = 0.0
    outer_panels = 0
    while stack:
        a, b, whole = stack.pop()
        mid = (a + b) / 2
        left, right = outer_panel(a, mid), outer_panel(mid, b)
        outer_panels += 2
        difference = abs(whole - (left + right))
        tolerance = max(config.abs_tol, config.rel_tol * abs(left + right)) * (b - a) / (2 * rho)
        if difference <= tolerance or b - a < 1e-12 or outer_panels >= config.max_subdivisions:
            if difference > tolerance:
                cap_hit = True
            value += left + right
            error += difference
        else:
            stack.extend([(a, mid, left), (mid, b, right)])

    if cap_hit:
        logger.warning(f"Subdivision cap hit for {phi.to_text()} at lambda={lam}")
    return QuadratureResult(value, error, panels + outer_panels, cap_hit, windowed)
