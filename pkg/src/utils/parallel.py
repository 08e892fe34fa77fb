"""
Parallel fan-out helper.

Tasks are evaluated serially or on a process pool; results always come back in task
order, so any reduction over them is independent of the worker count.
"""

from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Sequence


def _call(packed: tuple[Callable, tuple]) -> Any:
    func, args = packed
    return func(*args)


def fan_out(func: Callable, tasks: Sequence[tuple], workers: int = 1) -> list[Any]:
    """Apply func(*task) to every task, preserving order."""
    if workers <= 1 or len(tasks) <= 1:
        return [func(*task) for task in tasks]
    with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as executor:
        return list(executor.map(_call, [(func, task) for task in tasks]))
