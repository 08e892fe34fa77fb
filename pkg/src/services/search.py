"""
Search Service

Exhaustive scans of small labeled graphs, circulant candidates matched by spectrum,
and simulated annealing over fixed-size connected graphs, answering whether more
edges ever lower the best achievable eigenratio.
"""

import itertools
import math
from pathlib import Path
from typing import Optional

import numpy as np
import pandas as pd

from src.models.errors import DeskScaleExceededError, ExportIOError, InvalidSpecError
from src.models.schemas import (
    AnnealResult,
    AnnealSchedule,
    BestRow,
    BestTable,
    CirculantMatch,
    Edge,
    EdgeCountComparison,
    Graph,
)
from src.services.batched import adjacency_from_masks, connected_mask, edges_from_mask, eigenratios
from src.services.eigensolver import symmetric_eigenvalues
from src.services.graph_core import (
    build_graph,
    circulant_graph,
    is_connected,
    non_edges,
    random_connected_graph,
    random_regular_connected_graph,
)
from src.services.metrics import betweenness
from src.services.spectra import sync_report
from src.utils.config import get_settings
from src.utils.logger import OperationLogger, get_logger, log_performance, log_scan_progress
from src.utils.parallel import fan_out

logger = get_logger("search")

TIE_EPS = 1e-12
COMPARISON_EPS = 1e-9
SWITCH_ATTEMPTS = 32

BEST_TABLE_COLUMNS = ["m", "max_r", "lambda2", "lambdaN", "argmax_edge_list", "count_connected"]


# Exhaustive scan
def _better(candidate: tuple, incumbent: Optional[tuple]) -> bool:
    """Higher r wins; within TIE_EPS the lexicographically least edge list wins."""
    if incumbent is None:
        return True
    if candidate[0] > incumbent[0] + TIE_EPS:
        return True
    if candidate[0] < incumbent[0] - TIE_EPS:
        return False
    return candidate[1] < incumbent[1]


def _scan_chunk(n: int, start: int, size: int, m_lo: int, m_hi: int) -> dict[int, tuple]:
    """
    Scan edge masks [start, start + size).

    Returns m -> (r, argmax edges, lambda2, lambdaN, connected count).
    """
    masks = np.arange(start, start + size, dtype=np.int64)
    counts = np.bitwise_count(masks).astype(np.int64)
    in_range = (counts >= m_lo) & (counts <= m_hi)
    masks, counts = masks[in_range], counts[in_range]
    if len(masks) == 0:
        return {}

    adjacency = adjacency_from_masks(masks, n)
    connected = connected_mask(adjacency)
    masks, counts, adjacency = masks[connected], counts[connected], adjacency[connected]
    if len(masks) == 0:
        return {}

    lambda2, lambda_n, ratios = eigenratios(adjacency)
    best: dict[int, tuple] = {}
    for m in np.unique(counts):
        selected = np.flatnonzero(counts == m)
        top = ratios[selected].max()
        ties = selected[ratios[selected] >= top - TIE_EPS]
        pick = min(ties, key=lambda i: edges_from_mask(int(masks[i]), n))
        best[int(m)] = (
            float(ratios[pick]),
            edges_from_mask(int(masks[pick]), n),
            float(lambda2[pick]),
            float(lambda_n[pick]),
            len(selected),
        )
    return best


def _merge(total: dict[int, tuple], chunk: dict[int, tuple]) -> None:
    for m, entry in chunk.items():
        current = total.get(m)
        count = entry[4] + (current[4] if current else 0)
        winner = entry if _better(entry, current) else current
        total[m] = (*winner[:4], count)


def _scan_bounds(n: int, m_range: Optional[tuple[int, int]]) -> tuple[int, int]:
    full = n * (n - 1) // 2
    lo, hi = m_range if m_range is not None else (n - 1, full)
    if not n - 1 <= lo <= hi <= full:
        raise InvalidSpecError(f"edge range [{lo}, {hi}] not within [{n - 1}, {full}] for n = {n}")
    return lo, hi


@log_performance("search")
def exhaustive_scan(
    n: int,
    m_range: Optional[tuple[int, int]] = None,
    workers: Optional[int] = None,
) -> BestTable:
    """
    Exact maximum eigenratio for every edge count in m_range over all connected
    labeled graphs on n nodes.

    Edge subsets are enumerated as integer masks in fixed-size chunks. Batches are
    solved with the configured search solver and every reported optimum is
    re-evaluated with sync_report. Results do not depend on the worker count.

    Raises:
        InvalidSpecError: n < 2 or m_range outside [n - 1, n(n-1)/2]
        DeskScaleExceededError: n above search.max_exhaustive_nodes
    """
    settings = get_settings().search
    if n < 2:
        raise InvalidSpecError(f"scan needs n >= 2, got {n}")
    pairs = n * (n - 1) // 2
    if n > settings.max_exhaustive_nodes:
        raise DeskScaleExceededError(
            f"exhaustive scan limited to n <= {settings.max_exhaustive_nodes}, got n = {n}", 2**pairs
        )
    lo, hi = _scan_bounds(n, m_range)
    workers = workers or settings.workers

    chunk_size = 1 << min(settings.chunk_bits, pairs)
    tasks = [(n, start, chunk_size, lo, hi) for start in range(0, 1 << pairs, chunk_size)]
    op_logger = OperationLogger("search", n=n, m_lo=lo, m_hi=hi)
    op_logger.info("scan_started", chunks=len(tasks), workers=workers)

    best: dict[int, tuple] = {}
    batch = max(1, workers) * 8
    for offset in range(0, len(tasks), batch):
        for chunk in fan_out(_scan_chunk, tasks[offset : offset + batch], workers):
            _merge(best, chunk)
        done = min(offset + batch, len(tasks))
        log_scan_progress(op_logger.bound_logger, n, done, len(tasks), sum(entry[4] for entry in best.values()))

    rows = []
    for m in range(lo, hi + 1):
        r, edges, _, _, count = best[m]
        report = sync_report(build_graph(n, edges))
        if abs(report.r - r) > COMPARISON_EPS:
            op_logger.warning("argmax_recheck_mismatch", m=m, batch_r=r, recheck_r=report.r)
        rows.append(
            BestRow(
                m=m,
                max_r=report.r,
                lambda2=report.lambda2,
                lambda_n=report.lambda_n,
                argmax_edges=edges,
                n_connected_graphs=count,
            )
        )
    return BestTable(n=n, rows=tuple(rows))


def adjacent_comparisons(table: BestTable) -> list[EdgeCountComparison]:
    """Every consecutive (m, m + 1) pair with its verdict; equality within 1e-9."""
    comparisons = []
    for row, following in zip(table.rows, table.rows[1:]):
        delta = following.max_r - row.max_r
        if delta < -COMPARISON_EPS:
            verdict = "decrease"
        elif delta > COMPARISON_EPS:
            verdict = "increase"
        else:
            verdict = "equal"
        comparisons.append(
            EdgeCountComparison(m=row.m, max_r=row.max_r, next_max_r=following.max_r, verdict=verdict)
        )
    return comparisons


def nonmonotonicity_report(table: BestTable) -> list[tuple[int, int]]:
    """Pairs (m, m + 1) where the best r drops by more than 1e-9."""
    return [(c.m, c.m + 1) for c in adjacent_comparisons(table) if c.verdict == "decrease"]


def export_best_table_csv(table: BestTable, path: str | Path) -> Path:
    """
    Write 'm,max_r,lambda2,lambdaN,argmax_edge_list,count_connected' with the argmax
    edges as 'u-v;u-v;...'.

    Raises:
        ExportIOError: the file cannot be written
    """
    path = Path(path)
    df = pd.DataFrame(
        [
            (
                row.m,
                row.max_r,
                row.lambda2,
                row.lambda_n,
                ";".join(f"{u}-{v}" for u, v in row.argmax_edges),
                row.n_connected_graphs,
            )
            for row in table.rows
        ],
        columns=BEST_TABLE_COLUMNS,
    )
    try:
        df.to_csv(path, index=False, float_format="%.17g", lineterminator="\n")
    except OSError as e:
        raise ExportIOError(str(path), str(e)) from e
    return path


# Circulant candidates
def circulant_spectral_matches(
    n: int, m: int, lambda2: float, lambda_n: float, tol: float = 1e-6
) -> list[CirculantMatch]:
    """
    Connected circulant graphs C_n(S) with m edges whose lambda2 and lambdaN both lie
    within tol of the targets, in lexicographic order of the jump set S.

    Circulants are vertex-transitive, so every match has uniform betweenness.

    Raises:
        InvalidSpecError: n < 3
    """
    if n < 3:
        raise InvalidSpecError(f"circulant search needs n >= 3, got {n}")
    matches = []
    for size in range(1, n // 2 + 1):
        for jumps in itertools.combinations(range(1, n // 2 + 1), size):
            g = circulant_graph(n, jumps)
            if g.m != m or not is_connected(g):
                continue
            report = sync_report(g)
            if abs(report.lambda2 - lambda2) <= tol and abs(report.lambda_n - lambda_n) <= tol:
                matches.append(CirculantMatch(graph=g, jumps=jumps, report=report, betweenness=betweenness(g)))
    matches.sort(key=lambda match: match.jumps)
    logger.info("circulant_search_completed", n=n, m=m, matches=len(matches))
    return matches


# Simulated annealing
def default_schedule() -> AnnealSchedule:
    settings = get_settings().search
    return AnnealSchedule(
        t0=settings.anneal_t0,
        cooling=settings.anneal_cooling,
        iterations=settings.anneal_iterations,
        restarts=settings.anneal_restarts,
    )


def _ratio(laplacian: np.ndarray, solver: str) -> float:
    """Eigenratio of one Laplacian, 0 when disconnected."""
    values = symmetric_eigenvalues(laplacian, method=solver)
    if values[1] <= 1e-9 * max(1.0, values[-1]):
        return 0.0
    return min(1.0, float(values[1] / values[-1]))


def _accept(candidate: float, r: float, temperature: float, rng: np.random.Generator) -> bool:
    """Metropolis rule; once the temperature has underflowed to 0 only non-worsening moves pass."""
    if candidate <= 0.0:
        return False
    if candidate >= r:
        return True
    return temperature > 0.0 and rng.random() < math.exp((candidate - r) / temperature)


def regular_degree(n: int, m: int) -> Optional[int]:
    """
    Degree d of the d-regular graphs with n nodes and m edges when annealing within
    them is worthwhile: 2m = d * n with 3 <= d < n - 1. Connected 2-regular graphs
    are all cycles and the only (n - 1)-regular graph is complete.
    """
    if (2 * m) % n:
        return None
    degree = 2 * m // n
    return degree if 3 <= degree < n - 1 else None


def _propose_switch(
    laplacian: np.ndarray, edges: list[Edge], rng: np.random.Generator
) -> Optional[tuple[int, int, Edge, Edge]]:
    """
    Draw a degree-preserving switch: edges a-b, c-d become a-c, b-d (or a-d, b-c).

    Returns (i, j, new_i, new_j) or None when no valid switch turned up in
    SWITCH_ATTEMPTS draws.
    """
    for _ in range(SWITCH_ATTEMPTS):
        i, j = (int(k) for k in rng.choice(len(edges), size=2, replace=False))
        (a, b), (c, d) = edges[i], edges[j]
        if rng.random() < 0.5:
            c, d = d, c
        if len({a, b, c, d}) < 4 or laplacian[a, c] != 0.0 or laplacian[b, d] != 0.0:
            continue
        return i, j, (min(a, c), max(a, c)), (min(b, d), max(b, d))
    return None


def _anneal_rewiring(
    g: Graph, schedule: AnnealSchedule, rng: np.random.Generator, solver: str
) -> tuple[float, tuple[Edge, ...], int]:
    """
    A move removes a random edge and adds a random non-edge; disconnecting moves are
    rejected. Metropolis acceptance at T = t0 * cooling^k on iteration k.
    """
    edges = g.sorted_edges()
    missing = non_edges(g)
    laplacian = g.laplacian_matrix()

    r = _ratio(laplacian, solver)
    evaluations = 1
    best_r, best_edges = r, tuple(edges)
    if not missing:
        return best_r, best_edges, evaluations

    temperature = schedule.t0
    for _ in range(schedule.iterations):
        i = int(rng.integers(len(edges)))
        j = int(rng.integers(len(missing)))
        (a, b), (c, d) = edges[i], missing[j]
        _toggle(laplacian, a, b, -1.0)
        _toggle(laplacian, c, d, 1.0)

        candidate = _ratio(laplacian, solver)
        evaluations += 1
        if _accept(candidate, r, temperature, rng):
            edges[i], missing[j] = (c, d), (a, b)
            r = candidate
            if r > best_r + TIE_EPS:
                best_r, best_edges = r, tuple(sorted(edges))
        else:
            _toggle(laplacian, c, d, -1.0)
            _toggle(laplacian, a, b, 1.0)
        temperature *= schedule.cooling

    return best_r, best_edges, evaluations


def _anneal_switching(
    g: Graph, schedule: AnnealSchedule, rng: np.random.Generator, solver: str
) -> tuple[float, tuple[Edge, ...], int]:
    """
    Annealing restricted to graphs with the degree sequence of g. A move is a
    degree-preserving switch; disconnecting switches are rejected. Iterations without
    a valid switch cost no evaluation.
    """
    edges = g.sorted_edges()
    laplacian = g.laplacian_matrix()

    r = _ratio(laplacian, solver)
    evaluations = 1
    best_r, best_edges = r, tuple(edges)

    temperature = schedule.t0
    for _ in range(schedule.iterations):
        move = _propose_switch(laplacian, edges, rng)
        if move is not None:
            i, j, new_i, new_j = move
            old_i, old_j = edges[i], edges[j]
            for (u, v), sign in ((old_i, -1.0), (old_j, -1.0), (new_i, 1.0), (new_j, 1.0)):
                _toggle(laplacian, u, v, sign)

            candidate = _ratio(laplacian, solver)
            evaluations += 1
            if _accept(candidate, r, temperature, rng):
                edges[i], edges[j] = new_i, new_j
                r = candidate
                if r > best_r + TIE_EPS:
                    best_r, best_edges = r, tuple(sorted(edges))
            else:
                for (u, v), sign in ((new_i, -1.0), (new_j, -1.0), (old_i, 1.0), (old_j, 1.0)):
                    _toggle(laplacian, u, v, sign)
        temperature *= schedule.cooling

    return best_r, best_edges, evaluations


def _anneal_restart(
    n: int,
    m: int,
    schedule: AnnealSchedule,
    seed_seq: np.random.SeedSequence,
    solver: str,
    regular: bool,
) -> tuple[float, tuple[Edge, ...], int]:
    """
    One annealing run. Regular restarts start from a random connected d-regular graph
    and switch edges within that degree sequence; the others rewire single edges
    from a random connected start.
    """
    rng = np.random.default_rng(seed_seq)
    if regular:
        start = random_regular_connected_graph(n, 2 * m // n, rng)
        if start is not None:
            return _anneal_switching(start, schedule, rng, solver)
        logger.warning("regular_start_unavailable", n=n, m=m)
    return _anneal_rewiring(random_connected_graph(n, m, rng), schedule, rng, solver)


def _toggle(laplacian: np.ndarray, u: int, v: int, sign: float) -> None:
    """Add (sign = 1) or remove (sign = -1) edge u-v in a Laplacian, in place."""
    laplacian[u, u] += sign
    laplacian[v, v] += sign
    laplacian[u, v] -= sign
    laplacian[v, u] -= sign


@log_performance("search")
def anneal(
    n: int,
    m: int,
    seed: int,
    schedule: Optional[AnnealSchedule] = None,
    workers: Optional[int] = None,
) -> AnnealResult:
    """
    Simulated annealing for the best eigenratio over connected graphs with n nodes
    and m edges.

    Restarts use independent SeedSequence children of seed; the best restart wins,
    ties going to the lowest restart index. When 2m = d * n for a degree d with
    3 <= d < n - 1, odd-numbered restarts anneal within connected d-regular graphs
    by degree-preserving switches. Deterministic for a fixed seed and schedule
    whatever the worker count.

    Raises:
        InvalidSpecError: n < 2 or m outside [n - 1, n(n-1)/2]
    """
    settings = get_settings().search
    if n < 2 or not n - 1 <= m <= n * (n - 1) // 2:
        raise InvalidSpecError(f"no connected graph with n = {n}, m = {m}")
    schedule = schedule or default_schedule()
    workers = workers or settings.workers
    switching = regular_degree(n, m) is not None

    op_logger = OperationLogger("search", n=n, m=m, seed=seed)
    op_logger.info("anneal_started", schedule=schedule.describe(), workers=workers, regular_restarts=switching)

    children = np.random.SeedSequence(seed).spawn(schedule.restarts)
    tasks = [
        (n, m, schedule, child, settings.solver, switching and restart % 2 == 1)
        for restart, child in enumerate(children)
    ]
    results = fan_out(_anneal_restart, tasks, workers)

    best_r, best_edges, evaluations = -1.0, (), 0
    for restart, (r, edges, count) in enumerate(results):
        evaluations += count
        op_logger.debug("anneal_restart_completed", restart=restart, best_r=r)
        if r > best_r + TIE_EPS:
            best_r, best_edges = r, edges

    best_graph = build_graph(n, best_edges)
    report = sync_report(best_graph)
    op_logger.info("anneal_completed", best_r=report.r, evaluations=evaluations)
    return AnnealResult(
        n=n,
        m=m,
        best_graph=best_graph,
        best_r=report.r,
        schedule_desc=schedule.describe(),
        evaluations=evaluations,
    )

