"""Observability module - metrics and structured logging."""

from src.observability.logging import LogContext, get_logger, log_event, setup_logging
from src.observability.metrics import MetricsCollector, metrics

__all__ = ["metrics", "MetricsCollector", "setup_logging", "get_logger", "log_event", "LogContext"]
