"""Utility modules for the endpoint classifier.

This package provides logging, report formatting and error handling utilities.

Example:
    >>> from endpoint_classifier.utils import setup_logging, get_logger
    >>> setup_logging(level="INFO")
    >>> logger = get_logger(__name__)
"""

from .exceptions import (
    ClassifierError,
    CoefficientError,
    ConfigurationError,
    ConvergenceError,
    DepthError,
    DomainError,
    FitError,
    FormatError,
    InputError,
    MonotonicityError,
    NumericalError,
    ParameterError,
    PotentialSyntaxError,
    PreconditionError,
    QuadratureError,
    StepFailureError,
    TowerOverflowError,
    format_error_for_logging,
    get_error_context,
    is_recoverable_error,
)
from .formatting import (
    dumps_report,
    export_to_json,
    format_cell,
    format_csv,
    format_duration,
    format_float,
    format_key_value_pairs,
    format_table,
    to_jsonable,
    write_csv,
)
from .logging import (
    ExecutionMetrics,
    SolverLoggerAdapter,
    configure_from_config,
    get_logger,
    get_metrics,
    log_execution,
    log_metrics_summary,
    log_operation,
    log_performance,
    reset_metrics,
    setup_logging,
    setup_structlog,
    solver_value,
)

__all__ = [
    # Logging
    "setup_logging",
    "setup_structlog",
    "get_logger",
    "SolverLoggerAdapter",
    "solver_value",
    "log_execution",
    "log_operation",
    "log_performance",
    "get_metrics",
    "reset_metrics",
    "log_metrics_summary",
    "configure_from_config",
    "ExecutionMetrics",
    # Formatting
    "format_float",
    "format_cell",
    "format_csv",
    "format_table",
    "format_key_value_pairs",
    "format_duration",
    "to_jsonable",
    "dumps_report",
    "export_to_json",
    "write_csv",
    # Exceptions
    "ClassifierError",
    "ConfigurationError",
    "InputError",
    "PotentialSyntaxError",
    "DepthError",
    "FormatError",
    "MonotonicityError",
    "ParameterError",
    "DomainError",
    "PreconditionError",
    "CoefficientError",
    "TowerOverflowError",
    "NumericalError",
    "StepFailureError",
    "QuadratureError",
    "ConvergenceError",
    "FitError",
    "is_recoverable_error",
    "get_error_context",
    "format_error_for_logging",
]
