#!/usr/bin/env python3
"""
EDGE-ADDING TRAJECTORY SUITE
============================

Runs the edge-adding experiments for every (seed graph, strategy) pair, writes one
CSV (+ .meta) per run and prints the summary statistics.

Seed graphs: cycle:10, cycle:50 and the configured scale-free graph
(experiments.scale_free_seed_graph, default ba:50:2:12345).

Usage:
    python scripts/run_trajectory_suite.py [--out-dir results] [--fraction 0.5] [--seed 20070601] [--threads 4]
"""

import argparse
import math
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from src.models.errors import SyncLabError  # noqa: E402
from src.models.schemas import StrategyKind, StrategySpec, TrajectoryJob  # noqa: E402
from src.services.experiments import export_csv, run_trajectory_batch, saturation_steps, trajectory_stats  # noqa: E402
from src.services.graph_core import generate, parse_generator_spec  # noqa: E402
from src.utils.config import get_settings  # noqa: E402
from src.utils.debug import DebugContext, timer  # noqa: E402
from src.utils.logger import setup_logging  # noqa: E402


class TrajectorySuite:
    """Batch runner for the seed graph x strategy grid."""

    def __init__(self, out_dir: Path, fraction: float, seed: int, workers: int):
        self.out_dir = out_dir
        self.fraction = fraction
        self.seed = seed
        self.workers = workers
        self.seed_graphs = ["cycle:10", "cycle:50", get_settings().experiments.scale_free_seed_graph]
        self.logger = setup_logging("trajectory_suite", level=get_settings().logging.level)

    @timer
    def build_jobs(self) -> list[TrajectoryJob]:
        jobs = []
        for source in self.seed_graphs:
            spec = parse_generator_spec(source)
            g = generate(spec)
            steps = math.ceil(saturation_steps(g) * self.fraction)
            for kind in StrategyKind:
                jobs.append(
                    TrajectoryJob(
                        seed_graph=g,
                        seed_graph_desc=spec.describe(),
                        strategy=StrategySpec(kind=kind, seed=self.seed),
                        steps=steps,
                    )
                )
        return jobs

    def run(self) -> int:
        self.out_dir.mkdir(parents=True, exist_ok=True)
        jobs = self.build_jobs()
        self.logger.info("suite_started", jobs=len(jobs), fraction=self.fraction, workers=self.workers)

        with DebugContext("trajectory_suite"):
            trajectories = run_trajectory_batch(jobs, workers=self.workers)

        print("seed_graph,strategy,steps,net_gain,decreasing_steps,max_drawdown,r_final")
        for trajectory in trajectories:
            name = f"{trajectory.seed_graph_desc.replace(':', '_')}_{trajectory.strategy.kind.value}.csv"
            export_csv(trajectory, self.out_dir / name)
            net_gain, decreasing, drawdown = trajectory_stats(trajectory)
            print(
                f"{trajectory.seed_graph_desc},{trajectory.strategy.kind.value},{len(trajectory.points) - 1},"
                f"{net_gain:.12g},{decreasing},{drawdown:.12g},{trajectory.points[-1].r:.12g}"
            )
        return 0


def main():
    """Main execution function"""
    parser = argparse.ArgumentParser(description="Run the edge-adding trajectory suite")
    parser.add_argument("--out-dir", default="results", help="Directory for CSV and .meta files")
    parser.add_argument(
        "--fraction", type=float, default=1.0, help="Share of the non-edges to add (1.0 runs to the complete graph)"
    )
    parser.add_argument("--seed", type=int, default=None, help="Strategy seed (default from settings)")
    parser.add_argument("--threads", type=int, default=1, help="Parallel trajectories")
    args = parser.parse_args()

    if not 0.0 < args.fraction <= 1.0:
        print("--fraction must lie in (0, 1]", file=sys.stderr)
        sys.exit(2)

    seed = args.seed if args.seed is not None else get_settings().experiments.default_seed
    suite = TrajectorySuite(Path(args.out_dir), args.fraction, seed, args.threads)
    try:
        sys.exit(suite.run())
    except SyncLabError as e:
        print(f"error: {e}", file=sys.stderr)
        sys.exit(1)


if __name__ == "__main__":
    main()
