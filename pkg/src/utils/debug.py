# src/utils/debug.py
import functools
import json
import time
import traceback
from pathlib import Path
from typing import Any, Callable, Optional

from src.utils.logger import get_logger

logger = get_logger("debug")


def timer(func: Callable) -> Callable:
    """Decorator to time function execution"""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        try:
            result = func(*args, **kwargs)
        except Exception as e:
            elapsed = round(time.perf_counter() - start, 3)
            logger.error("timed_call_failed", function=func.__name__, seconds=elapsed, error=str(e))
            raise
        logger.info("timed_call", function=func.__name__, seconds=round(time.perf_counter() - start, 3))
        return result

    return wrapper


def debug_dump(data: Any, filename: str, output_dir: Optional[str] = None) -> Path:
    """Dump data to JSON for debugging"""
    debug_dir = Path(output_dir or "debug_output")
    debug_dir.mkdir(parents=True, exist_ok=True)

    filepath = debug_dir / f"{filename}_{time.strftime('%Y%m%d_%H%M%S')}.json"

    with open(filepath, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2, default=str)

    logger.debug("debug_dump_written", path=str(filepath))
    return filepath


class DebugContext:
    """Context manager for detailed debugging"""

    def __init__(self, operation: str, output_dir: Optional[str] = None):
        self.operation = operation
        self.output_dir = output_dir
        self.start_time = None

    def __enter__(self):
        self.start_time = time.perf_counter()
        logger.debug("operation_started", operation=self.operation)
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        elapsed = time.perf_counter() - self.start_time

        if exc_type:
            logger.error("operation_failed", operation=self.operation, seconds=round(elapsed, 3), error=str(exc_val))
            debug_dump(
                {
                    "operation": self.operation,
                    "error": str(exc_val),
                    "traceback": "".join(traceback.format_exception(exc_type, exc_val, exc_tb)),
                },
                f"error_{self.operation}",
                self.output_dir,
            )
        else:
            logger.info("operation_completed", operation=self.operation, seconds=round(elapsed, 3))
