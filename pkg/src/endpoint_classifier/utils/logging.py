"""Logging for the classifier: handlers, solver context and solver metrics.

Reports go to stdout, so every handler installed here writes to stderr or a
file. Log records routinely carry exact rationals (``alpha``, ``eps``), complex
spectral parameters and numpy scalars; both the JSON formatter and the
structlog chain render those through :func:`solver_value`.

Numerical routines wrap their work in :func:`log_execution` and fill in the
yielded :class:`ExecutionMetrics` (windows integrated, right-hand-side
evaluations, Sturm counts). The counters are folded into a process-wide store
that the CLI summarizes at DEBUG/INFO level after each run.

Example:
    >>> from endpoint_classifier.utils.logging import setup_logging, get_logger
    >>> setup_logging(level="INFO", structured=True)
    >>> log = get_logger(__name__, endpoint="zero", alpha=Fraction(1, 2))
    >>> log.info("Classified", extra={"kind": "limit point"})
"""

import json
import logging
import sys
import time
from collections.abc import Callable, Generator, Mapping, MutableMapping
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from enum import Enum
from functools import wraps
from pathlib import Path
from typing import Any, TextIO

import numpy as np

from .formatting import to_jsonable

try:
    import structlog

    STRUCTLOG_AVAILABLE = True
except ImportError:
    STRUCTLOG_AVAILABLE = False

DEFAULT_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

# Attributes every LogRecord has; anything else arrived through ``extra``
_RECORD_ATTRIBUTES = frozenset(vars(logging.makeLogRecord({}))) | {"message", "taskName"}

_METRICS_STORE: dict[str, Any] = {}


def _empty_store() -> dict[str, Any]:
    return {
        "rhs_evaluations": 0,
        "windows_integrated": 0,
        "sturm_counts": 0,
        "operations": {},
        "errors": [],
        "start_time": time.time(),
    }


def solver_value(value: Any) -> Any:
    """Convert a solver quantity to a JSON-friendly value.

    Complex numbers become ``{"re": ..., "im": ...}``, enums their value and numpy
    arrays lists; containers are converted element-wise. Everything else follows
    the report encoding of :func:`to_jsonable` (fractions as ``"p/q"``, numpy
    scalars as plain numbers).
    """
    if isinstance(value, complex | np.complexfloating):
        return {"re": float(value.real), "im": float(value.imag)}
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, np.ndarray):
        return [solver_value(v) for v in value.tolist()]
    if isinstance(value, list | tuple):
        return [solver_value(v) for v in value]
    if isinstance(value, Mapping):
        return {str(k): solver_value(v) for k, v in value.items()}
    return to_jsonable(value)


def _json_default(value: Any) -> Any:
    converted = solver_value(value)
    return str(value) if converted is value else converted


@dataclass
class ExecutionMetrics:
    """Metrics for one tracked numerical operation."""

    operation: str
    start_time: float = field(default_factory=time.time)
    end_time: float | None = None
    duration: float | None = None
    success: bool = True
    error: str | None = None
    rhs_evaluations: int = 0
    windows: int = 0
    sturm_counts: int = 0
    metadata: dict[str, Any] = field(default_factory=dict)

    def complete(self, success: bool = True, error: str | None = None) -> None:
        """Stamp the end time and outcome."""
        self.end_time = time.time()
        self.duration = self.end_time - self.start_time
        self.success = success
        self.error = error

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def counters(self) -> dict[str, int]:
        """The solver counters alone, as logged on completion."""
        return {
            "rhs_evaluations": self.rhs_evaluations,
            "windows": self.windows,
            "sturm_counts": self.sturm_counts,
        }


class StructuredFormatter(logging.Formatter):
    """One JSON object per record, with the record's extra fields at top level."""

    def format(self, record: logging.LogRecord) -> str:
        created = datetime.fromtimestamp(record.created, timezone.utc)  # noqa: UP017
        payload: dict[str, Any] = {
            "timestamp": created.isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "function": record.funcName,
            "line": record.lineno,
        }
        if record.exc_info:
            payload["exception"] = self.formatException(record.exc_info)
        payload.update(
            (key, value) for key, value in vars(record).items() if key not in _RECORD_ATTRIBUTES
        )
        return json.dumps(payload, default=_json_default)


class ColoredFormatter(logging.Formatter):
    """Console formatter that colors the level name."""

    COLORS = {
        "DEBUG": "\033[36m",
        "INFO": "\033[32m",
        "WARNING": "\033[33m",
        "ERROR": "\033[31m",
        "CRITICAL": "\033[35m",
    }
    RESET = "\033[0m"

    def format(self, record: logging.LogRecord) -> str:
        # Color a copy; the record is shared with the other handlers
        colored = logging.makeLogRecord(vars(record))
        color = self.COLORS.get(record.levelname, self.RESET)
        colored.levelname = f"{color}{record.levelname}{self.RESET}"
        return super().format(colored)


class SolverLoggerAdapter(logging.LoggerAdapter[logging.Logger]):
    """Logger adapter that adds bound solver context to every record.

    Per-call ``extra`` fields are merged over the bound context rather than
    replacing it.
    """

    def process(
        self, msg: Any, kwargs: MutableMapping[str, Any]
    ) -> tuple[Any, MutableMapping[str, Any]]:
        kwargs["extra"] = {**(self.extra or {}), **kwargs.get("extra", {})}
        return msg, kwargs

    def bind(self, **context: Any) -> "SolverLoggerAdapter":
        """A new adapter with ``context`` added to the bound fields."""
        return SolverLoggerAdapter(self.logger, {**(self.extra or {}), **context})


def get_logger(name: str, **context: Any) -> SolverLoggerAdapter:
    """Logger for ``name`` that stamps ``context`` onto every record.

    Args:
        name: Logger name (typically ``__name__``).
        **context: Fields such as ``endpoint``, ``alpha`` or ``z`` carried by every
            record; rendered by :func:`solver_value` in JSON and structlog output.

    Returns:
        Adapter over the stdlib logger, so records still reach every handler and
        ``caplog``.
    """
    return SolverLoggerAdapter(logging.getLogger(name), context)


def _console_formatter(structured: bool, colored: bool, fmt: str) -> logging.Formatter:
    if structured:
        return StructuredFormatter()
    if colored:
        return ColoredFormatter(fmt=fmt, datefmt=DATE_FORMAT)
    return logging.Formatter(fmt=fmt, datefmt=DATE_FORMAT)


def setup_logging(
    level: str = "INFO",
    structured: bool = False,
    log_file: str | None = None,
    console: bool = True,
    colored: bool = True,
    module_levels: Mapping[str, str] | None = None,
    stream: TextIO | None = None,
    fmt: str = DEFAULT_FORMAT,
) -> None:
    """Replace the root handlers with a console and/or file handler.

    Args:
        level: Root level name.
        structured: JSON lines instead of ``fmt``.
        log_file: Optional log file; its parent directory is created. The file
            always receives JSON when ``structured`` is set.
        console: Whether to add a console handler.
        colored: Color level names on the console (ignored when structured).
        module_levels: Level overrides per logger name, e.g.
            ``{"endpoint_classifier.numerics": "DEBUG"}``.
        stream: Console stream; stderr by default.
        fmt: Text format for the console and file handlers.
    """
    root_logger = logging.getLogger()
    root_logger.setLevel(getattr(logging, level.upper()))
    root_logger.handlers.clear()

    if console:
        console_handler = logging.StreamHandler(stream or sys.stderr)
        console_handler.setFormatter(_console_formatter(structured, colored, fmt))
        root_logger.addHandler(console_handler)

    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_path)
        file_handler.setFormatter(_console_formatter(structured, False, fmt))
        root_logger.addHandler(file_handler)

    for module, module_level in (module_levels or {}).items():
        logging.getLogger(module).setLevel(getattr(logging, module_level.upper()))

    logging.getLogger("hydra").setLevel(logging.WARNING)
    logging.getLogger("omegaconf").setLevel(logging.WARNING)

    _METRICS_STORE["start_time"] = time.time()
    root_logger.debug(
        "Logging configured", extra={"level": level, "structured": structured, "log_file": log_file}
    )


def _render_solver_values(
    logger: Any, method_name: str, event_dict: MutableMapping[str, Any]
) -> MutableMapping[str, Any]:
    for key, value in event_dict.items():
        event_dict[key] = solver_value(value)
    return event_dict


def setup_structlog(json_output: bool = True) -> bool:
    """Render the root handlers' records through structlog.

    Records from plain ``logging`` calls (every module here logs that way) pass
    through the same processor chain as ``structlog.get_logger()`` events: level,
    logger name, the record's extra fields, an ISO timestamp and solver value
    conversion, then a JSON or key=value console renderer.

    Call after :func:`setup_logging`; handlers added later keep their formatter.

    Args:
        json_output: JSON renderer when True, console renderer otherwise.

    Returns:
        False if structlog is not installed (the stdlib formatters stay).
    """
    if not STRUCTLOG_AVAILABLE:
        logging.getLogger(__name__).warning("structlog not available, keeping stdlib formatters")
        return False

    shared_processors: list[Any] = [
        structlog.stdlib.add_log_level,
        structlog.stdlib.add_logger_name,
        structlog.stdlib.ExtraAdder(),
        structlog.processors.TimeStamper(fmt="iso", utc=True),
        _render_solver_values,
    ]
    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            *shared_processors,
            structlog.stdlib.ProcessorFormatter.wrap_for_formatter,
        ],
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=False,
    )
    renderer = (
        structlog.processors.JSONRenderer()
        if json_output
        else structlog.dev.ConsoleRenderer(colors=False)
    )
    formatter = structlog.stdlib.ProcessorFormatter(
        foreign_pre_chain=shared_processors,
        processors=[structlog.stdlib.ProcessorFormatter.remove_processors_meta, renderer],
    )
    for handler in logging.getLogger().handlers:
        handler.setFormatter(formatter)
    return True


@contextmanager
def log_execution(
    logger: logging.Logger, operation: str, level: int = logging.DEBUG, include_metrics: bool = True
) -> Generator[ExecutionMetrics, None, None]:
    """Track a numerical operation and its solver counters.

    Args:
        logger: Logger for the start, completion and failure records.
        operation: Operation name, the key in the metrics store.
        level: Level of the start and completion records.
        include_metrics: Fold the counters into the process-wide store.

    Yields:
        The metrics to fill in.

    Example:
        >>> with log_execution(logger, "classify_endpoint") as metrics:
        ...     metrics.windows += 1
        ...     metrics.rhs_evaluations += 120
    """
    metrics = ExecutionMetrics(operation=operation)
    logger.log(
        level, f"Starting execution: {operation}", extra={"operation": operation, "event": "start"}
    )

    try:
        yield metrics
    except Exception as e:
        metrics.complete(success=False, error=str(e))
        logger.error(
            f"Failed execution: {operation}",
            extra={
                "operation": operation,
                "event": "error",
                "error": str(e),
                "error_type": type(e).__name__,
                "duration": f"{metrics.duration:.3f}s",
            },
        )
        _METRICS_STORE["errors"].append(
            {
                "operation": operation,
                "error": str(e),
                "timestamp": datetime.now(timezone.utc).isoformat(),  # noqa: UP017
            }
        )
        raise

    metrics.complete(success=True)
    log_data: dict[str, Any] = {
        "operation": operation,
        "event": "complete",
        "duration": f"{metrics.duration:.3f}s",
        **metrics.metadata,
    }
    if include_metrics:
        log_data.update(metrics.counters())
        _METRICS_STORE["rhs_evaluations"] += metrics.rhs_evaluations
        _METRICS_STORE["windows_integrated"] += metrics.windows
        _METRICS_STORE["sturm_counts"] += metrics.sturm_counts
        _METRICS_STORE["operations"].setdefault(operation, []).append(metrics.to_dict())
    logger.log(level, f"Completed execution: {operation}", extra=log_data)


@contextmanager
def log_operation(
    logger: logging.Logger, operation: str, **context: Any
) -> Generator[None, None, None]:
    """DEBUG start/complete/failed records around a step with no solver counters.

    Example:
        >>> with log_operation(logger, "parse_potential", text=text):
        ...     poly = parse(text)
    """
    start_time = time.time()
    logger.debug(
        f"Starting: {operation}", extra={"operation": operation, "event": "start", **context}
    )
    outcome, extra = "Completed", {"event": "complete"}
    try:
        yield
    except Exception as e:
        outcome, extra = "Failed", {"event": "error", "error": str(e)}
        raise
    finally:
        logger.debug(
            f"{outcome}: {operation}",
            extra={
                "operation": operation,
                **extra,
                "duration": f"{time.time() - start_time:.3f}s",
                **context,
            },
        )


def log_performance(
    logger: logging.Logger | None = None, threshold_seconds: float = 1.0
) -> Callable[[Callable[..., Any]], Callable[..., Any]]:
    """Decorator that warns when a call takes at least ``threshold_seconds``.

    Example:
        >>> @log_performance(threshold_seconds=30.0)
        ... def run_sweep(cells):
        ...     ...
    """

    def decorator(func: Callable[..., Any]) -> Callable[..., Any]:
        func_logger = logger or logging.getLogger(func.__module__)

        @wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            start_time = time.time()
            result = func(*args, **kwargs)
            duration = time.time() - start_time
            if duration >= threshold_seconds:
                func_logger.warning(
                    f"Slow execution: {func.__name__}",
                    extra={
                        "function": func.__name__,
                        "duration": f"{duration:.2f}s",
                        "threshold": f"{threshold_seconds:.2f}s",
                    },
                )
            return result

        return wrapper

    return decorator


def get_metrics() -> dict[str, Any]:
    """Snapshot of the metrics store with ``total_runtime`` added."""
    metrics = _METRICS_STORE.copy()
    if metrics.get("start_time"):
        metrics["total_runtime"] = time.time() - metrics["start_time"]
    return metrics


def reset_metrics() -> None:
    """Reset all metrics to initial state."""
    _METRICS_STORE.clear()
    _METRICS_STORE.update(_empty_store())


def log_metrics_summary(logger: logging.Logger) -> None:
    """Log the run totals, then one line per tracked operation."""
    metrics = get_metrics()
    logger.info(
        "Metrics Summary",
        extra={
            "rhs_evaluations": metrics["rhs_evaluations"],
            "windows_integrated": metrics["windows_integrated"],
            "sturm_counts": metrics["sturm_counts"],
            "total_runtime": f"{metrics.get('total_runtime', 0):.2f}s",
            "operations_tracked": len(metrics["operations"]),
            "errors_count": len(metrics["errors"]),
        },
    )

    for operation, executions in metrics["operations"].items():
        durations = [e["duration"] for e in executions if e["duration"]]
        logger.info(
            f"Operation stats: {operation}",
            extra={
                "operation": operation,
                "executions": len(executions),
                "avg_duration": f"{sum(durations) / len(executions):.3f}s",
                "windows": sum(e["windows"] for e in executions),
                "rhs_evaluations": sum(e["rhs_evaluations"] for e in executions),
            },
        )


def configure_from_config(config: Mapping[str, Any]) -> None:
    """Apply the ``logging`` config section.

    Keys: ``level``, ``format``, ``structured``, ``colored``, ``structlog``,
    ``file``, ``console`` and ``modules``.

    Example:
        >>> from endpoint_classifier.config import load_config, get_logging_config
        >>> configure_from_config(get_logging_config(load_config()))
    """
    structured = bool(config.get("structured", False))
    setup_logging(
        level=config.get("level", "WARNING"),
        structured=structured,
        log_file=config.get("file"),
        console=config.get("console", True),
        colored=bool(config.get("colored", False)),
        module_levels=config.get("modules") or {},
        fmt=config.get("format") or DEFAULT_FORMAT,
    )
    if config.get("structlog", False):
        setup_structlog(json_output=structured)


reset_metrics()
