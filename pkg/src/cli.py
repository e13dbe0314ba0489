#!/usr/bin/env python3
"""restrikt command line.

Analyze a polynomial phase, emit its polygon, K function and restriction heights,
and run the numerical checks of the oscillatory lab.

Exit codes: 0 success or PASS, 1 FAIL, 2 rejected input, 3 inconclusive.
"""

import csv
import io
import json
import logging
import sys
from functools import wraps
from pathlib import Path
from typing import Callable, List, Optional, Sequence

import click
import numpy as np
from dotenv import load_dotenv
from numpy.polynomial import Polynomial

# Load .env file from project root
project_root = Path(__file__).parent.parent
env_file = project_root / ".env"
if env_file.exists():
    load_dotenv(env_file)

from algebra.numbers import as_fraction, format_ext, format_float  # noqa: E402
from algebra.parser import parse_polynomial  # noqa: E402
from config import get_config  # noqa: E402
from errors import NotApplicableError, RestriktError  # noqa: E402
from geometry.augmented import k_function_csv_rows  # noqa: E402
from geometry.newton import FaceKind  # noqa: E402
from lab.airy import airy_collapse_check  # noqa: E402
from lab.corput import van_der_corput_check  # noqa: E402
from lab.decay import Verdict, compare_to, decay_exponent_fit  # noqa: E402
from lab.knapp import knapp_sweep  # noqa: E402
from lab.quadrature import QuadratureConfig  # noqa: E402
from lab.sweep import CSV_HEADER, decay_sweep, dyadic_grid, sweep_csv_rows  # noqa: E402
from models.report import RestrictionHeightTable, VerificationReport  # noqa: E402
from pipeline.analysis import Analysis, analyze  # noqa: E402
from pipeline.report import (  # noqa: E402
    build_report,
    kfunction_model,
    polygon_model,
    render_json,
    restriction_height_model,
)
from restriction.conditions import admissible_polygon  # noqa: E402
from utils.observability import get_analysis_logger  # noqa: E402

EXIT_CODES = {Verdict.PASS: 0, Verdict.FAIL: 1, Verdict.INCONCLUSIVE: 3}

log = get_analysis_logger("cli")


def _configure_logging(verbose: int) -> None:
    if verbose >= 2:
        level = "DEBUG"
    elif verbose == 1:
        level = "INFO"
    else:
        level = get_config().log_level
    logging.getLogger().setLevel(level)


def handle_errors(func: Callable) -> Callable:
    """Print RestriktError as JSON on stdout and exit 2."""

    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except RestriktError as e:
            log.log_error(e, {"command": func.__name__})
            click.echo(render_error(e))
            sys.exit(2)

    return wrapper


def render_error(error: RestriktError) -> str:
    return json.dumps(error.to_dict(), sort_keys=True, indent=2, default=str)


def _emit(text: str, out: Optional[str]) -> None:
    with click.open_file(out or "-", "w", encoding="utf-8") as handle:
        handle.write(text)


def _csv_text(header: Sequence[str], rows: List[List[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _ratio(ctx, param, value):
    try:
        return [as_fraction(v) for v in value] if isinstance(value, tuple) else as_fraction(value)
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"{value!r} is not a rational number")


def _pair(ctx, param, value):
    if value is None:
        return None
    parts = value.split(",")
    if len(parts) != 2:
        raise click.BadParameter("expected two rationals separated by a comma, e.g. 1/6,1/4")
    try:
        return as_fraction(parts[0].strip()), as_fraction(parts[1].strip())
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"{value!r} is not a pair of rationals")


def _threads(flag: int) -> int:
    override = get_config().threads_override()
    return override if override is not None else flag


def _exponents(low: int, high: int) -> List[int]:
    return list(range(low, high + 1))


def phase_options(func: Callable) -> Callable:
    """--phi, --normalize-gradient and --out, shared by every phase command."""
    func = click.option("--out", type=click.Path(dir_okay=False), help="Write to a file instead of stdout")(func)
    func = click.option(
        "--normalize-gradient", is_flag=True, help="Subtract the linear part instead of rejecting the phase"
    )(func)
    func = click.option("--phi", required=True, help='Phase polynomial, e.g. "x2^2 - 2 x1^2 x2 + x1^4 + x1^5"')(func)
    return func


def _analysis(phi: str, normalize_gradient: bool) -> Analysis:
    return analyze(parse_polynomial(phi), normalize=normalize_gradient, max_iter=get_config().max_iter)


def _require_non_adapted(analysis: Analysis, what: str) -> None:
    if analysis.adapted:
        raise NotApplicableError(f"{what} needs a non-adapted phase", {"h": str(analysis.h)})


def _univariate(text: str) -> Polynomial:
    """A polynomial in x1 alone as a numpy Polynomial in s."""
    p = parse_polynomial(text)
    if any(b for _, b in p.support()):
        raise NotApplicableError(f"{p.to_text()} must be a polynomial in x1 only")
    degree = max((a for a, _ in p.support()), default=0)
    coefficients = np.zeros(degree + 1)
    for (a, _), c in p.terms.items():
        coefficients[a] = float(c)
    return Polynomial(coefficients)


def _finish(report: VerificationReport, out: Optional[str], verdict: Verdict) -> None:
    _emit(render_json(report), out)
    log.log_verdict(report.check, verdict.value, {"reason": report.reason})
    sys.exit(EXIT_CODES[verdict])


@click.group()
@click.option("-v", "--verbose", count=True, help="INFO with -v, DEBUG with -vv")
@click.option("--seed", type=int, default=None, help="Accepted for reproducible scripts; every computation is deterministic")
def cli(verbose, seed):
    """Restriction theory analyzer for polynomial surfaces x3 = phi(x1, x2)."""
    handle_errors(_configure_logging)(verbose)


@cli.command("analyze")
@phase_options
@click.option("--json", "fmt", flag_value="json", default="json", help="JSON report (default)")
@click.option("--csv", "fmt", flag_value="csv", help="Invariants as name,value rows")
@handle_errors
def analyze_cmd(phi, normalize_gradient, out, fmt):
    """Full exact analysis of a phase."""
    analysis = _analysis(phi, normalize_gradient)
    report = build_report(analysis)
    if fmt != "csv":
        _emit(render_json(report), out)
        return
    heights = analysis.heights
    rows = [
        ["d", format_ext(heights.d)],
        ["h", format_ext(heights.h)],
        ["h_lin", format_ext(heights.h_lin)],
        ["nu", str(heights.nu)],
        ["m", format_ext(heights.m)],
        ["adapted", str(analysis.adapted).lower()],
        ["psi", analysis.trace.psi.to_text()],
        ["phi_a", analysis.phi_a.to_text(("y1", "y2"))],
        ["class", report.singularity.label if report.singularity else ""],
    ]
    _emit(_csv_text(["name", "value"], rows), out)


@cli.command()
@phase_options
@click.option("--csv", "fmt", flag_value="csv", default="csv", help="Vertex rows for plotting (default)")
@click.option("--json", "fmt", flag_value="json", help="Exact polygon with its half-planes")
@handle_errors
def polygon(phi, normalize_gradient, out, fmt):
    """Vertices of the polygon of necessary (1/p1', 1/p3') conditions."""
    analysis = _analysis(phi, normalize_gradient)
    result = admissible_polygon(analysis)
    if fmt == "json":
        _emit(render_json(polygon_model(result)), out)
    else:
        _emit(_csv_text(["inv_p1p", "inv_p3p", "label"], result.csv_rows()), out)


@cli.command()
@phase_options
@click.option("--csv", "fmt", flag_value="csv", default="csv", help="Breakpoint rows for plotting (default)")
@click.option("--json", "fmt", flag_value="json", help="Exact breakpoints")
@handle_errors
def kfunction(phi, normalize_gradient, out, fmt):
    """Breakpoints of the supporting-line function of the augmented polyhedron."""
    analysis = _analysis(phi, normalize_gradient)
    _require_non_adapted(analysis, "The K function")
    if fmt == "json":
        _emit(render_json(kfunction_model(analysis.kfunction)), out)
    else:
        _emit(_csv_text(["u", "K"], k_function_csv_rows(analysis.kfunction)), out)


@cli.command()
@phase_options
@click.option("--r", "ratios", multiple=True, default=("1",), callback=_ratio, help="Ratio r, repeatable (e.g. 1/2)")
@click.option("--json", "fmt", flag_value="json", default="json", help="Exact table (default)")
@click.option("--csv", "fmt", flag_value="csv", help="Table rows")
@handle_errors
def hres(phi, normalize_gradient, out, ratios, fmt):
    """Restriction heights h^res_r for each requested ratio."""
    analysis = _analysis(phi, normalize_gradient)
    _require_non_adapted(analysis, "The restriction height")
    rows = [restriction_height_model(analysis, r) for r in ratios]
    if fmt != "csv":
        _emit(render_json(RestrictionHeightTable(phase=analysis.phi.to_text(), rows=rows)), out)
        return
    table = [[format_ext(m.r), format_ext(m.value), format_float(m.value), m.argmax] for m in rows]
    _emit(_csv_text(["r", "h_res", "h_res_float", "argmax"], table), out)


@cli.group()
def verify():
    """Numerical checks: decay, vdc, airy, knapp."""


@verify.command()
@phase_options
@click.option("--lambda-min", default=10, show_default=True, help="Smallest dyadic exponent k of lambda = 2^k")
@click.option("--lambda-max", default=20, show_default=True, help="Largest dyadic exponent")
@click.option("--tol", type=float, default=None, help="Slope tolerance (RESTRIKT_DECAY_TOL by default)")
@click.option("--threads", default=1, show_default=True, help="Worker threads (RESTRIKT_THREADS wins)")
@click.option("--csv", "csv_out", type=click.Path(dir_okay=False), help="Also write the (lambda, J) samples here")
@handle_errors
def decay(phi, normalize_gradient, out, lambda_min, lambda_max, tol, threads, csv_out):
    """Fit the decay exponent of J(lambda) and compare it with -1/h."""
    config = get_config()
    analysis = _analysis(phi, normalize_gradient)
    tol = config.decay_tol if tol is None else tol
    exponents = _exponents(lambda_min, lambda_max)
    samples = decay_sweep(analysis.phi, exponents, _threads(threads), QuadratureConfig.from_runtime(config))
    if csv_out:
        _emit(_csv_text(CSV_HEADER, sweep_csv_rows(samples)), csv_out)

    fit = None
    if len(samples) >= 2:
        fit = decay_exponent_fit([s.lam for s in samples], [s.result.magnitude for s in samples], analysis.nu)
    compact = analysis.adapted_principal.face.kind in (FaceKind.VERTEX, FaceKind.COMPACT_EDGE)
    verdict = compare_to(fit, analysis.h, analysis.nu, tol, compact)
    details = {
        "h": format_ext(analysis.h),
        "nu": analysis.nu,
        "expected_slope": verdict.expected_slope,
        "observed_slope": verdict.observed_slope,
        "tolerance": tol,
        "r2": fit.r2 if fit else None,
        "lambdas": dyadic_grid(exponents),
        "magnitudes": [s.result.magnitude for s in samples],
        "cap_hit": [s.lam for s in samples if s.result.cap_hit],
    }
    report = VerificationReport(
        check="decay", phase=analysis.phi.to_text(), verdict=verdict.verdict.value, reason=verdict.reason, details=details
    )
    _finish(report, out, verdict.verdict)


@verify.command()
@click.option("--phi", default="x1^2", show_default=True, help="Phase f(s) written in x1")
@click.option("--order", default=2, show_default=True, help="Derivative order M with |f^(M)| >= 1")
@click.option("--lambda-min", default=10, show_default=True, help="Smallest dyadic exponent")
@click.option("--lambda-max", default=20, show_default=True, help="Largest dyadic exponent")
@click.option("--out", type=click.Path(dir_okay=False), help="Write to a file instead of stdout")
@handle_errors
def vdc(phi, order, lambda_min, lambda_max, out):
    """van der Corput bound on [0, 1] with unit amplitude."""
    f = _univariate(phi)
    result = van_der_corput_check(f, order, dyadic_grid(_exponents(lambda_min, lambda_max)))
    verdict = Verdict.PASS if result.within_bound else Verdict.FAIL
    details = {
        "order": result.order,
        "lambdas": list(result.lambdas),
        "statistics": list(result.statistics),
        "sup_statistic": result.sup_statistic,
        "constant": result.constant,
        "bound": result.bound,
        "oracle_deviation": result.oracle_deviation,
    }
    reason = "WithinBound" if result.within_bound else "BoundExceeded"
    report = VerificationReport(check="vdc", phase=phi, verdict=verdict.value, reason=reason, details=details)
    _finish(report, out, verdict)


@verify.command()
@click.option("--phi", default="1", show_default=True, help="Cubic coefficient b(t) written in x1, b(0) != 0")
@click.option("--lambda-min", default=8, show_default=True, help="Smallest dyadic exponent")
@click.option("--lambda-max", default=14, show_default=True, help="Largest dyadic exponent")
@click.option("--v-min", default=-2.0, show_default=True, help="Smallest scaled frequency v")
@click.option("--v-max", default=2.0, show_default=True, help="Largest scaled frequency v")
@click.option("--v-points", default=9, show_default=True, help="Number of v samples")
@click.option("--out", type=click.Path(dir_okay=False), help="Write to a file instead of stdout")
@handle_errors
def airy(phi, lambda_min, lambda_max, v_min, v_max, v_points, out):
    """Scaling collapse of lambda^(1/3) J(lambda, v lambda^(-2/3)) onto the Airy profile."""
    b = _univariate(phi)
    if b(0.0) == 0:
        raise NotApplicableError("The Airy check needs b(0) != 0", {"phi": phi})
    v_grid = np.linspace(v_min, v_max, v_points)
    config = QuadratureConfig.from_runtime()
    result = airy_collapse_check(b, dyadic_grid(_exponents(lambda_min, lambda_max)), v_grid, config=config)
    details = {
        "lambdas": list(result.lambdas),
        "v_grid": list(result.v_grid),
        "spreads": list(result.spreads),
        "max_spread": result.max_spread,
        "profile_deviation": result.profile_deviation,
    }
    reasons = {Verdict.PASS: "SpreadsDecrease", Verdict.FAIL: "SpreadsNotDecreasing", Verdict.INCONCLUSIVE: "ShortGrid"}
    report = VerificationReport(
        check="airy", phase=phi, verdict=result.verdict.value, reason=reasons[result.verdict], details=details
    )
    _finish(report, out, result.verdict)


@verify.command()
@phase_options
@click.option("--eps-min", default=1, show_default=True, help="Smallest k in eps = 2^-k")
@click.option("--eps-max", default=20, show_default=True, help="Largest k in eps = 2^-k")
@click.option("--q", "q", callback=_pair, default=None, help="Exponent pair to compare exactly, e.g. 1/6,1/4")
@handle_errors
def knapp(phi, normalize_gradient, out, eps_min, eps_max, q):
    """Bound sup|phi|/eps on the Knapp boxes of every supporting weight."""
    analysis = _analysis(phi, normalize_gradient)
    _require_non_adapted(analysis, "The Knapp check")
    reports = knapp_sweep(analysis, eps_exponents=_exponents(eps_min, eps_max), q=q)
    passed = all(r.verdict is Verdict.PASS for r in reports)
    verdict = Verdict.PASS if passed else Verdict.FAIL
    details = {
        "weights": [
            {
                "weight": [format_ext(r.weight.k1), format_ext(r.weight.k2)],
                "max_ratio": r.max_ratio,
                "verdict": r.verdict.value,
                "relation": r.exponent_check.relation if r.exponent_check else None,
            }
            for r in reports
        ],
        "bound": reports[0].bound if reports else None,
    }
    reason = "BoxesBounded" if passed else "RatioExceeded"
    report = VerificationReport(
        check="knapp", phase=analysis.phi.to_text(), verdict=verdict.value, reason=reason, details=details
    )
    _finish(report, out, verdict)


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
