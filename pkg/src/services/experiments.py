"""
Experiments Service

Edge-adding trajectories: start from a seed graph, add one non-edge per step by a
strategy and record the eigenratio after every addition.
"""

from collections.abc import Sequence
from pathlib import Path
from typing import Optional

import numpy as np
import pandas as pd

from src import __version__
from src.models.errors import DisconnectedGraphError, ExportIOError, InvalidSpecError
from src.models.schemas import (
    RATIO_EPS,
    EdgeAction,
    Graph,
    StrategyKind,
    StrategySpec,
    Trajectory,
    TrajectoryJob,
    TrajectoryPoint,
)
from src.services.graph_core import connectivity, mutate_edge, non_edges
from src.services.spectra import sync_report
from src.utils.config import get_settings
from src.utils.logger import OperationLogger, log_performance, log_trajectory_step
from src.utils.parallel import fan_out

CSV_COLUMNS = ["m_add", "r", "lambda2", "lambdaN"]


def _point(m_add: int, g: Graph) -> TrajectoryPoint:
    report = sync_report(g)
    return TrajectoryPoint(m_add=m_add, r=report.r, lambda2=report.lambda2, lambda_n=report.lambda_n)


def saturation_steps(g: Graph) -> int:
    """Edge additions left before g becomes complete."""
    return g.n * (g.n - 1) // 2 - g.m


class EdgeAdder:
    """
    Picks the next non-edge for a strategy.

    degree_homogeneous minimizes (deg u + deg v, max(deg u, deg v)) and breaks ties
    uniformly with the seeded generator; random picks uniformly over all non-edges.
    Candidates are always held in lexicographic order.
    """

    def __init__(self, g: Graph, strategy: StrategySpec):
        self.kind = strategy.kind
        self.rng = np.random.default_rng(strategy.seed)
        self.degrees = g.degrees().copy()
        missing = np.array(non_edges(g), dtype=np.int64).reshape(-1, 2)
        self.u, self.v = missing[:, 0], missing[:, 1]

    def __len__(self) -> int:
        return len(self.u)

    def next_edge(self) -> tuple[int, int]:
        if self.kind == StrategyKind.RANDOM:
            index = int(self.rng.integers(len(self)))
        else:
            sums = self.degrees[self.u] + self.degrees[self.v]
            peaks = np.maximum(self.degrees[self.u], self.degrees[self.v])
            best = sums == sums.min()
            candidates = np.flatnonzero(best & (peaks == peaks[best].min()))
            index = int(candidates[self.rng.integers(len(candidates))])

        edge = (int(self.u[index]), int(self.v[index]))
        self.u = np.delete(self.u, index)
        self.v = np.delete(self.v, index)
        self.degrees[edge[0]] += 1
        self.degrees[edge[1]] += 1
        return edge


def edge_add_trajectory(
    g0: Graph,
    strategy: StrategySpec,
    steps: int,
    seed_graph_desc: Optional[str] = None,
) -> Trajectory:
    """
    Add `steps` edges to g0 one at a time and record r, lambda2 and lambdaN.

    Point 0 is g0 itself. The same (g0, strategy kind, seed) always yields the same
    trajectory.

    Raises:
        DisconnectedGraphError: g0 is not connected
        InvalidSpecError: steps negative or larger than the number of non-edges
    """
    count, _ = connectivity(g0)
    if count != 1:
        raise DisconnectedGraphError(count)
    available = saturation_steps(g0)
    if not 0 <= steps <= available:
        raise InvalidSpecError(f"steps must lie in [0, {available}], got {steps}")

    desc = seed_graph_desc or f"n={g0.n} m={g0.m}"
    op_logger = OperationLogger("experiments", seed_graph=desc, strategy=strategy.kind.value, seed=strategy.seed)
    adder = EdgeAdder(g0, strategy)

    current = g0
    points = [_point(0, current)]
    for m_add in range(1, steps + 1):
        edge = adder.next_edge()
        current = mutate_edge(current, edge[0], edge[1], EdgeAction.ADD)
        points.append(_point(m_add, current))
        log_trajectory_step(op_logger.bound_logger, m_add, edge, points[-1].r)

    op_logger.info("trajectory_completed", steps=steps, r_initial=points[0].r, r_final=points[-1].r)
    return Trajectory(points=tuple(points), seed_graph_desc=desc, strategy=strategy)


def trajectory_stats(t: Trajectory) -> tuple[float, int, float]:
    """
    (net_gain, n_decreasing_steps, max_drawdown).

    A step counts as decreasing when r falls by more than RATIO_EPS; max_drawdown is
    the largest drop from a running peak to a later point.
    """
    r = np.array(t.ratios())
    if len(r) < 2:
        raise InvalidSpecError("trajectory statistics need at least 2 points")

    net_gain = float(r[-1] - r[0])
    n_decreasing = int(np.sum(np.diff(r) < -RATIO_EPS))
    max_drawdown = float(np.max(np.maximum.accumulate(r) - r))
    return net_gain, n_decreasing, max_drawdown


def trajectory_frame(t: Trajectory) -> pd.DataFrame:
    return pd.DataFrame(
        [(p.m_add, p.r, p.lambda2, p.lambda_n) for p in t.points],
        columns=CSV_COLUMNS,
    )


def meta_path(path: str | Path) -> Path:
    """Sibling metadata file: results/c10.csv -> results/c10.meta."""
    return Path(path).with_suffix(".meta")


def export_csv(t: Trajectory, path: str | Path) -> Path:
    """
    Write 'm_add,r,lambda2,lambdaN' rows (17 significant digits, LF endings) plus the
    .meta sibling.

    Raises:
        ExportIOError: the CSV or metadata file cannot be written
    """
    path = Path(path)
    meta = "\n".join(
        [
            f"seed_graph={t.seed_graph_desc}",
            f"strategy={t.strategy.kind.value}",
            f"seed={t.strategy.seed}",
            f"tool_version={__version__}",
        ]
    )
    try:
        trajectory_frame(t).to_csv(path, index=False, float_format="%.17g", lineterminator="\n")
        meta_path(path).write_text(meta + "\n", encoding="utf-8")
    except OSError as e:
        raise ExportIOError(str(path), str(e)) from e
    return path


def read_trajectory_csv(path: str | Path) -> list[TrajectoryPoint]:
    """
    Parse a file written by export_csv.

    Raises:
        ExportIOError: the file cannot be read
        InvalidSpecError: the header is not 'm_add,r,lambda2,lambdaN'
    """
    try:
        df = pd.read_csv(path, float_precision="round_trip")
    except OSError as e:
        raise ExportIOError(str(path), str(e)) from e

    if list(df.columns) != CSV_COLUMNS:
        raise InvalidSpecError(f"unexpected trajectory columns {list(df.columns)}")
    return [
        TrajectoryPoint(m_add=int(row.m_add), r=float(row.r), lambda2=float(row.lambda2), lambda_n=float(row.lambdaN))
        for row in df.itertuples(index=False)
    ]


def _run_job(job: TrajectoryJob) -> Trajectory:
    return edge_add_trajectory(job.seed_graph, job.strategy, job.steps, seed_graph_desc=job.seed_graph_desc)


@log_performance("experiments")
def run_trajectory_batch(jobs: Sequence[TrajectoryJob], workers: Optional[int] = None) -> list[Trajectory]:
    """Run independent trajectories, returned in job order."""
    return fan_out(_run_job, [(job,) for job in jobs], workers or get_settings().search.workers)
