"""
Exception hierarchy for SyncLab.

Every error raised by the services derives from SyncLabError. None of them derive
from ValueError, so pydantic validators let them propagate unchanged.
"""

from typing import Optional


class SyncLabError(Exception):
    """Base class for all SyncLab errors."""


class InvalidSpecError(SyncLabError):
    """Parameters outside the documented bounds of an operation."""


class InvalidEdgeError(SyncLabError):
    """Self-loop or out-of-range endpoint."""

    def __init__(self, message: str, edge: Optional[tuple[int, int]] = None):
        super().__init__(message)
        self.edge = edge


class EdgeExistsError(SyncLabError):
    def __init__(self, edge: tuple[int, int]):
        super().__init__(f"edge {edge[0]}-{edge[1]} already present")
        self.edge = edge


class EdgeMissingError(SyncLabError):
    def __init__(self, edge: tuple[int, int]):
        super().__init__(f"edge {edge[0]}-{edge[1]} not present")
        self.edge = edge


class InvalidSubsetError(SyncLabError):
    """Empty or out-of-range node subset."""


class EdgeListParseError(SyncLabError):
    """Malformed edge-list document."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class ShapeError(SyncLabError):
    def __init__(self, shape: tuple[int, ...]):
        super().__init__(f"expected a square matrix, got shape {shape}")
        self.shape = shape


class NotSymmetricError(SyncLabError):
    def __init__(self, deviation: float, tol: float):
        super().__init__(f"matrix not symmetric: max |m - m.T| = {deviation:.3e} exceeds {tol:.3e}")
        self.deviation = deviation


class ConvergenceError(SyncLabError):
    def __init__(self, index: int, iterations: int):
        super().__init__(f"eigenvalue {index} did not converge after {iterations} QL sweeps")
        self.iterations = iterations


class DisconnectedGraphError(SyncLabError):
    """Operation needs a connected graph (lambda2 would be 0)."""

    def __init__(self, component_count: int):
        super().__init__(f"graph is disconnected ({component_count} components)")
        self.component_count = component_count


class NotApplicableError(SyncLabError):
    """Formula precondition not met for this graph."""


class DeskScaleExceededError(SyncLabError):
    """Exhaustive enumeration refused because it is too large."""

    def __init__(self, message: str, count: int):
        super().__init__(f"{message} ({count} candidates refused)")
        self.count = count


class ExportIOError(SyncLabError):
    def __init__(self, path: str, reason: str):
        super().__init__(f"I/O failure on {path}: {reason}")
        self.path = path
