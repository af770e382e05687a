"""Structured logging configuration."""

import logging
import sys
from datetime import datetime, timezone
from enum import Enum
from typing import Any, Dict, Optional, TextIO

from pythonjsonlogger import jsonlogger

from src.core.config import settings

# Computation scope carried by LogContext, in display order. ``m`` is the
# level of the graph or polynomial; ``level`` is reserved for the log level.
SCOPE_FIELDS = ("family", "m", "k", "bc")


def scope_of(record: logging.LogRecord) -> str:
    """``family=P m=3 bc=dirichlet`` for the scope fields set on a record."""
    parts = []
    for key in SCOPE_FIELDS:
        value = getattr(record, key, None)
        if value is not None:
            parts.append(f"{key}={value}")
    return " ".join(parts)


class SpectraJsonFormatter(jsonlogger.JsonFormatter):
    """JSON formatter with the fields every gasket-spectra record carries."""

    def add_fields(
        self,
        log_record: Dict[str, Any],
        record: logging.LogRecord,
        message_dict: Dict[str, Any],
    ) -> None:
        super().add_fields(log_record, record, message_dict)

        log_record["timestamp"] = datetime.now(timezone.utc).isoformat()
        log_record["level"] = record.levelname
        log_record["logger"] = record.name
        log_record["service"] = settings.APP_NAME

        if record.pathname:
            log_record["file"] = f"{record.pathname}:{record.lineno}"

        scope = scope_of(record)
        if scope:
            log_record["scope"] = scope

        for field in ["asctime", "levelname", "name"]:
            log_record.pop(field, None)


class SpectraTextFormatter(logging.Formatter):
    """Plain formatter that appends the computation scope in brackets."""

    def format(self, record: logging.LogRecord) -> str:
        text = super().format(record)
        scope = scope_of(record)
        return f"{text} [{scope}]" if scope else text


class ContextFilter(logging.Filter):
    """Filter that adds context fields to log records."""

    _context: Dict[str, Any] = {}

    @classmethod
    def set_context(cls, **kwargs: Any) -> None:
        """Set context fields that will be added to all logs."""
        cls._context.update(kwargs)

    @classmethod
    def clear_context(cls) -> None:
        """Clear all context fields."""
        cls._context.clear()

    def filter(self, record: logging.LogRecord) -> bool:
        """Add context fields to the log record."""
        for key, value in self._context.items():
            setattr(record, key, value)
        return True


def setup_logging(
    level: Optional[str] = None,
    format_type: Optional[str] = None,
    stream: Optional[TextIO] = None,
) -> None:
    """
    Set up structured logging.

    Args:
        level: Log level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        format_type: Output format ('json' or 'text')
        stream: Destination stream, stdout when omitted
    """
    level = level or settings.LOG_LEVEL
    format_type = format_type or settings.LOG_FORMAT

    root_logger = logging.getLogger()
    root_logger.setLevel(getattr(logging, level.upper()))

    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    handler = logging.StreamHandler(stream or sys.stdout)
    handler.setLevel(getattr(logging, level.upper()))
    handler.addFilter(ContextFilter())

    formatter: logging.Formatter
    if format_type.lower() == "json":
        formatter = SpectraJsonFormatter(
            "%(timestamp)s %(level)s %(logger)s %(message)s",
            rename_fields={"levelname": "level", "name": "logger"},
        )
    else:
        formatter = SpectraTextFormatter(
            "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
        )

    handler.setFormatter(formatter)
    root_logger.addHandler(handler)

    # sympy and numpy stay quiet unless something is wrong
    logging.getLogger("sympy").setLevel(logging.WARNING)


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger with the given name.

    Args:
        name: Logger name (typically __name__)

    Returns:
        Configured logger instance
    """
    return logging.getLogger(name)


class LogContext:
    """Context manager for scoped logging context.

    Used to tag every record emitted while a family, level or boundary
    condition is being computed. Enum values are stored by value, so
    ``LogContext(bc=BoundaryCondition.DIRICHLET)`` logs ``bc=dirichlet``.
    """

    def __init__(self, **kwargs: Any):
        if "level" in kwargs:
            raise ValueError("'level' is the log level; pass the graph level as 'm'")
        self.context = {
            key: value.value if isinstance(value, Enum) else value
            for key, value in kwargs.items()
        }
        self.previous_context: Dict[str, Any] = {}

    def __enter__(self) -> "LogContext":
        self.previous_context = ContextFilter._context.copy()
        ContextFilter.set_context(**self.context)
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> bool:
        ContextFilter._context = self.previous_context
        return False


def log_event(
    logger: logging.Logger,
    level: int,
    message: str,
    **extra: Any,
) -> None:
    """
    Log a message with structured extra fields.

    Args:
        logger: Logger instance
        level: Log level
        message: Log message
        **extra: Additional fields to include
    """
    logger.log(level, message, extra=extra)


def log_stage(
    logger: logging.Logger,
    stage: str,
    status: str = "started",
    **extra: Any,
) -> None:
    """
    Log a computation stage transition.

    Args:
        logger: Logger instance
        stage: Stage name (BUILD, ISOLATE, ASSEMBLE, VERIFY, ...)
        status: Stage status (started, completed, failed)
        **extra: Additional fields
    """
    log_event(
        logger,
        logging.INFO,
        f"{stage} {status}",
        stage=stage,
        stage_status=status,
        **extra,
    )
