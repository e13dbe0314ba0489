"""Structured logging and latency tracking for analysis stages."""

import logging
import sys
import time
from functools import wraps
from typing import Any, Dict, Optional, Union

import numpy as np

# Configure structured logging only if not already configured; stdout carries reports
if not logging.root.handlers:
    logging.basicConfig(
        level=logging.WARNING, stream=sys.stderr, format="%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    )

# Cache for AnalysisLogger instances to avoid recreating them
_logger_cache: Dict[str, "AnalysisLogger"] = {}


class AnalysisLogger:
    """
    Structured logging for analysis components.

    Provides methods to log pipeline stages, verification verdicts and errors
    with consistent structured data.

    Example:
        >>> logger = AnalysisLogger("pipeline")
        >>> logger.log_stage("adapted", phase="x2^2 + x1^5", metadata={"steps": 0})
    """

    def __init__(self, component: str):
        """
        Initialize an AnalysisLogger instance.

        Args:
            component: Name of the component using this logger (e.g., "pipeline", "lab")
        """
        self.component = component
        self.logger = logging.getLogger(f"restrikt.{component}")

    def log_stage(self, stage: str, phase: str, metadata: Optional[Dict[str, Any]] = None) -> None:
        """
        Log the completion of a computation stage.

        Args:
            stage: Stage name (e.g., "newton", "adapted", "augmented")
            phase: Text of the phase being analyzed
            metadata: Optional dictionary of additional metadata to include in the log
        """
        self.logger.info(
            f"Stage {stage} done",
            extra={
                "component": self.component,
                "stage": stage,
                "phase": sanitize_for_logging(phase),
                "metadata": sanitize_for_logging(metadata or {}),
            },
        )

    def log_verdict(self, check: str, verdict: str, metadata: Optional[Dict[str, Any]] = None) -> None:
        """
        Log the verdict of a numerical verification.

        Args:
            check: Name of the verification (e.g., "decay", "airy")
            verdict: PASS, FAIL or INCONCLUSIVE
            metadata: Optional dictionary of additional metadata to include in the log
        """
        level = logging.INFO if verdict == "PASS" else logging.WARNING
        self.logger.log(
            level,
            f"Check {check}: {verdict}",
            extra={
                "component": self.component,
                "check": check,
                "verdict": verdict,
                "metadata": sanitize_for_logging(metadata or {}),
            },
        )

    def log_error(self, error: Exception, context: Optional[Dict[str, Any]] = None) -> None:
        """
        Log an error with full exception information.

        Args:
            error: The exception that was raised
            context: Optional dictionary of additional context information
        """
        self.logger.error(
            f"Error: {str(error)}",
            extra={
                "component": self.component,
                "error_type": type(error).__name__,
                "error_code": getattr(error, "code", None),
                "context": sanitize_for_logging(context or {}),
            },
            exc_info=True,
        )


def get_analysis_logger(component: str) -> AnalysisLogger:
    if component not in _logger_cache:
        _logger_cache[component] = AnalysisLogger(component)
    return _logger_cache[component]


def sanitize_for_logging(obj: Any, max_length: int = 200) -> Union[Dict[str, Any], list, str, Any]:
    """
    Recursively sanitize objects for logging by truncating long phases and arrays.

    Args:
        obj: Object to sanitize (dict, list, str, numpy array or other)
        max_length: Maximum string length or array size kept verbatim

    Returns:
        Sanitized copy of the object. Long strings keep their head followed by a
        length marker; arrays larger than max_length are replaced by a shape summary.

    Example:
        >>> sanitize_for_logging({"grid": np.zeros(1000)})
        {'grid': '<array shape=(1000,) dtype=float64>'}
    """
    if isinstance(obj, dict):
        return {k: sanitize_for_logging(v, max_length) for k, v in obj.items()}
    elif isinstance(obj, (list, tuple)):
        return [sanitize_for_logging(item, max_length) for item in obj]
    elif isinstance(obj, str):
        if len(obj) > max_length:
            return f"{obj[:max_length]}...<{len(obj)}_chars>"
        return obj
    elif isinstance(obj, np.ndarray):
        if obj.size > max_length:
            return f"<array shape={obj.shape} dtype={obj.dtype}>"
        return obj.tolist()
    return obj


def track_latency(component: str):
    """
    Decorator to track function execution latency and log results.

    Logs both successful completions and errors with latency information.
    Logger instances are cached by component name.

    Args:
        component: Name of the component using this decorator (e.g., "pipeline", "lab")

    Example:
        >>> @track_latency("pipeline")
        ... def analyze(phi):
        ...     ...
    """

    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            logger = get_analysis_logger(component)

            start_time = time.perf_counter()
            try:
                result = func(*args, **kwargs)
                latency_ms = (time.perf_counter() - start_time) * 1000
                logger.logger.info(
                    f"{func.__name__} completed", extra={"function": func.__name__, "latency_ms": latency_ms, "success": True}
                )
                return result
            except Exception as e:
                latency_ms = (time.perf_counter() - start_time) * 1000
                # validation failures are expected outcomes, not crashes
                if getattr(e, "code", None) is not None:
                    logger.logger.warning(
                        f"{func.__name__} rejected input: {e}",
                        extra={"function": func.__name__, "latency_ms": latency_ms, "success": False},
                    )
                else:
                    logger.log_error(e, context={"function": func.__name__, "latency_ms": latency_ms, "success": False})
                raise

        return wrapper

    return decorator
