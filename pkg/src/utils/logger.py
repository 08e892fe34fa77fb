"""
Logging Utilities

Centralized structured logging configuration for SyncLab using structlog.
"""

import functools
import logging
import sys
import time
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional, TextIO

import structlog


def configure_structlog() -> None:
    """Route structlog events through stdlib logging."""
    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            structlog.dev.ConsoleRenderer(colors=False),
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )


def setup_logging(
    name: str = "synclab",
    level: str = "INFO",
    stream: Optional[TextIO] = None,
    log_dir: Optional[str] = None,
):
    """
    Set up structured logging with console and optional file output.

    Console output goes to stderr by default so command output on stdout
    stays clean.

    Args:
        name: Logger name (used for log file naming)
        level: Logging level (DEBUG, INFO, WARNING, ERROR)
        stream: Console stream (defaults to sys.stderr)
        log_dir: Directory for a rotating log file; None disables file output
    """
    numeric_level = getattr(logging, level.upper(), logging.INFO)

    configure_structlog()

    root_logger = logging.getLogger()
    root_logger.setLevel(numeric_level)

    # Remove any existing handlers
    root_logger.handlers.clear()

    console_handler = logging.StreamHandler(stream or sys.stderr)
    console_handler.setLevel(numeric_level)
    root_logger.addHandler(console_handler)

    if log_dir:
        Path(log_dir).mkdir(parents=True, exist_ok=True)
        file_handler = RotatingFileHandler(
            Path(log_dir) / f"{name}.log",
            maxBytes=10_000_000,  # 10MB
            backupCount=5,
        )
        file_handler.setFormatter(logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s"))
        file_handler.setLevel(numeric_level)
        root_logger.addHandler(file_handler)

    return structlog.get_logger(name)


def get_logger(name: str) -> structlog.stdlib.BoundLogger:
    """Get structured logger instance with consistent naming."""
    return structlog.get_logger(f"synclab.{name}")


class OperationLogger:
    """
    Structured logger with operation context tracking.

    Keeps run parameters (node count, seed, strategy, ...) attached to every
    event of a long computation.
    """

    def __init__(self, logger_name: str, **initial_context):
        self.logger_name = logger_name
        self.logger = get_logger(logger_name)
        self.context = initial_context
        self.bound_logger = self.logger.bind(**self.context)

    def bind(self, **kwargs) -> "OperationLogger":
        """Create new logger instance with additional context."""
        return OperationLogger(self.logger_name, **{**self.context, **kwargs})

    def debug(self, event: str, **kwargs):
        self.bound_logger.debug(event, **kwargs)

    def info(self, event: str, **kwargs):
        self.bound_logger.info(event, **kwargs)

    def warning(self, event: str, **kwargs):
        self.bound_logger.warning(event, **kwargs)

    def error(self, event: str, **kwargs):
        self.bound_logger.error(event, **kwargs)


def log_performance(logger_name: str):
    """Decorator to log function execution time with structured data."""

    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            logger = get_logger(logger_name)

            start_time = time.perf_counter()
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                logger.error(
                    "function_failed",
                    function=func.__name__,
                    execution_time_seconds=round(time.perf_counter() - start_time, 3),
                    error=str(e),
                    success=False,
                )
                raise
            logger.info(
                "function_completed",
                function=func.__name__,
                execution_time_seconds=round(time.perf_counter() - start_time, 3),
                success=True,
            )
            return result

        return wrapper

    return decorator


# Library default: stdlib routing without touching handlers (warnings reach stderr)
configure_structlog()


# Convenience functions for common logging patterns
def log_claim_result(logger: structlog.stdlib.BoundLogger, claim_id: str, instance: str, status: str, **witness):
    """Log the outcome of one checked claim instance."""
    log = logger.warning if status == "FAIL" else logger.debug
    log("claim_checked", claim_id=claim_id, instance=instance, status=status, **witness)


def log_scan_progress(
    logger: structlog.stdlib.BoundLogger, n: int, chunks_done: int, chunks_total: int, connected: int
):
    """Log exhaustive scan progress."""
    logger.info(
        "scan_progress",
        n=n,
        chunks_done=chunks_done,
        chunks_total=chunks_total,
        connected_graphs=connected,
        progress_percent=round(chunks_done / chunks_total * 100, 1) if chunks_total > 0 else 100.0,
    )


def log_trajectory_step(logger: structlog.stdlib.BoundLogger, m_add: int, edge: tuple[int, int], r: float):
    """Log one edge addition of a trajectory."""
    logger.debug("trajectory_step", m_add=m_add, u=edge[0], v=edge[1], r=r)
