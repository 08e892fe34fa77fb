"""
Vectorised helpers for stacks of small graphs.

Exhaustive scans, random sampling and annealing evaluate many graphs on the same
node set. These helpers work on adjacency stacks of shape (k, n, n) so connectivity
and eigenratios are computed with a handful of numpy calls per batch.
"""

from functools import lru_cache

import numpy as np

from src.models.schemas import Edge


@lru_cache(maxsize=32)
def pair_index(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Endpoints of every node pair in lexicographic order; pair k <-> mask bit k."""
    iu, ju = np.triu_indices(n, k=1)
    return iu, ju


def pairs_list(n: int) -> list[Edge]:
    iu, ju = pair_index(n)
    return [(int(u), int(v)) for u, v in zip(iu, ju)]


def adjacency_from_masks(masks: np.ndarray, n: int) -> np.ndarray:
    """Adjacency stack from integer edge masks (bit k selects pair k)."""
    iu, ju = pair_index(n)
    bits = (masks[:, None] >> np.arange(len(iu), dtype=np.int64)) & 1
    adjacency = np.zeros((len(masks), n, n))
    adjacency[:, iu, ju] = bits
    adjacency[:, ju, iu] = bits
    return adjacency


def adjacency_from_pair_indices(indices: np.ndarray, n: int) -> np.ndarray:
    """Adjacency stack from rows of selected pair indices, shape (k, m)."""
    iu, ju = pair_index(n)
    adjacency = np.zeros((len(indices), n, n))
    rows = np.repeat(np.arange(len(indices)), indices.shape[1])
    flat = indices.ravel()
    adjacency[rows, iu[flat], ju[flat]] = 1.0
    adjacency[rows, ju[flat], iu[flat]] = 1.0
    return adjacency


def connected_mask(adjacency: np.ndarray) -> np.ndarray:
    """Boolean mask of connected graphs in the stack (reachability by squaring)."""
    k, n, _ = adjacency.shape
    if n == 1:
        return np.ones(k, dtype=bool)
    reach = (adjacency + np.eye(n)) > 0
    span = 1
    while span < n - 1:
        reach = (reach.astype(float) @ reach.astype(float)) > 0
        span *= 2
    return reach[:, 0, :].all(axis=1)


def laplacian_stack(adjacency: np.ndarray) -> np.ndarray:
    degrees = adjacency.sum(axis=2)
    n = adjacency.shape[1]
    return degrees[:, :, None] * np.eye(n) - adjacency


def eigenratios(adjacency: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(lambda2, lambdaN, r) for every graph in a stack of connected graphs."""
    values = np.linalg.eigvalsh(laplacian_stack(adjacency))
    lambda2 = values[:, 1]
    lambda_n = values[:, -1]
    return lambda2, lambda_n, np.minimum(1.0, lambda2 / lambda_n)


def edges_from_mask(mask: int, n: int) -> tuple[Edge, ...]:
    pairs = pairs_list(n)
    return tuple(pairs[k] for k in range(len(pairs)) if (mask >> k) & 1)


def edges_from_pair_indices(indices, n: int) -> tuple[Edge, ...]:
    pairs = pairs_list(n)
    return tuple(sorted(pairs[int(k)] for k in indices))
