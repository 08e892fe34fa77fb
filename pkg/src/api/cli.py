"""
SyncLab Command Line

Subcommands: spectrum, ratio, complement, metrics, verify, trajectory, scan, anneal.

Exit codes: 0 success, 1 a verification reported FAIL, 2 usage or input error.
Numbers go to stdout with 12 significant digits; logs and diagnostics go to stderr.

Examples:
    python -m src.api.cli ratio cycle:6
    python -m src.api.cli ratio cycle:5 --add-edge 0,2
    python -m src.api.cli verify theorem1 --n 4..40
    python -m src.api.cli scan --n 6 --out best6.csv
"""

import argparse
import os
import sys
from pathlib import Path
from typing import Any, Optional, TextIO

from pydantic import ValidationError

from src import __version__
from src.models.errors import EdgeListParseError, ExportIOError, SyncLabError
from src.models.schemas import (
    AnnealSchedule,
    ClaimReport,
    ClaimStatus,
    CommandInvocation,
    Graph,
    StrategyKind,
    StrategySpec,
    Subcommand,
)
from src.services.experiments import (
    edge_add_trajectory,
    export_csv,
    saturation_steps,
    trajectory_frame,
    trajectory_stats,
)
from src.services.graph_core import (
    add_edges,
    complement,
    connectivity,
    generate,
    non_edges,
    parse_edge_list,
    parse_generator_spec,
    serialize_edge_list,
)
from src.services.metrics import metric_report
from src.services.search import (
    adjacent_comparisons,
    anneal,
    default_schedule,
    exhaustive_scan,
    export_best_table_csv,
    nonmonotonicity_report,
)
from src.services.reference_graphs import reference_graph
from src.services.spectra import laplacian_spectrum, sync_report
from src.services.verify import (
    check_circulant_betweenness_example,
    run_property_suite,
    sample_ratio_bound,
    verify_betweenness_indicator,
    verify_complement_identities,
    verify_cycle_theorem,
    verify_degree_bounds,
    verify_edge_monotonicity,
    verify_even_cycle_bound,
    verify_even_cycle_pair_bound,
    verify_lambda2_preservation,
    verify_split_complement,
    write_claim_reports,
)
from src.utils.config import get_settings, reset_settings
from src.utils.logger import get_logger, setup_logging

logger = get_logger("cli")

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

# check name -> accepted aliases
VERIFY_CHECKS = {
    "monotonicity": ("l1",),
    "degree-bounds": ("l2",),
    "lambda2": ("l4",),
    "complement": ("l5",),
    "even-cycle": ("l6",),
    "even-cycle-pair": ("l6_pair", "l6-pair"),
    "betweenness": ("gamma2",),
    "cycle-chords": ("t1", "theorem1"),
    "ratio-bound": ("t2", "t2_sample", "theorem2"),
    "split-complement": ("split", "split_compl"),
}
_CHECK_ALIASES = {alias: name for name, aliases in VERIFY_CHECKS.items() for alias in (name, *aliases)}

# check name -> randomised suite kind
_SUITES = {
    "monotonicity": "monotonicity",
    "degree-bounds": "degree_bounds",
    "lambda2": "lambda2",
    "complement": "complement",
    "even-cycle": "even_cycle",
    "even-cycle-pair": "even_cycle_pair",
    "split-complement": "split_complement",
}

_STRATEGIES = {"homog": StrategyKind.DEGREE_HOMOGENEOUS, "random": StrategyKind.RANDOM}


class UsageError(SyncLabError):
    """Bad flag value or combination."""


class OneLineArgumentParser(argparse.ArgumentParser):
    """argparse with a single-line diagnostic and exit code 2 on usage errors."""

    def error(self, message: str):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(value: float) -> str:
    """12 significant digits; rounding noise around zero prints as 0."""
    value = float(value)
    if abs(value) < 1e-12:
        value = 0.0
    return f"{value:.12g}"


def parse_pair(text: str) -> tuple[int, int]:
    try:
        u, v = (int(part) for part in text.split(","))
    except ValueError as e:
        raise UsageError(f"expected 'u,v', got '{text}'") from e
    return u, v


def parse_range(text: str) -> tuple[int, int]:
    """'7' -> (7, 7); '4..40' -> (4, 40)."""
    try:
        if ".." in text:
            lo, hi = (int(part) for part in text.split(".."))
        else:
            lo = hi = int(text)
    except ValueError as e:
        raise UsageError(f"expected 'N' or 'LO..HI', got '{text}'") from e
    if lo > hi:
        raise UsageError(f"empty range '{text}'")
    return lo, hi


def load_graph(source: str) -> tuple[Graph, str]:
    """An existing file is read as a UTF-8 edge list; anything else is a generator string."""
    path = Path(source)
    if path.is_file():
        try:
            text = path.read_text(encoding="utf-8")
        except UnicodeDecodeError as e:
            line_number = e.object[: e.start].count(b"\n") + 1
            raise EdgeListParseError(f"invalid UTF-8 byte 0x{e.object[e.start]:02x}", line_number) from e
        except OSError as e:
            raise UsageError(f"cannot read {source}: {e}") from e
        return parse_edge_list(text), path.name
    spec = parse_generator_spec(source)
    return generate(spec), spec.describe()


class CommandRunner:
    """
    Executes one CommandInvocation.

    Output streams are injectable so that the runner can be driven in-process.
    """

    def __init__(self, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None):
        self.stdout = stdout or sys.stdout
        self.stderr = stderr or sys.stderr

    def run(self, invocation: CommandInvocation) -> int:
        handler = getattr(self, f"_run_{invocation.subcommand.value}")
        try:
            return handler(invocation.graph_source, invocation.options)
        except ValidationError as e:
            print(f"error: {e.errors()[0]['msg']}", file=self.stderr)
            return EXIT_USAGE
        except SyncLabError as e:
            message = str(e) or type(e).__name__
            print(f"error: {message}", file=self.stderr)
            logger.debug("command_failed", subcommand=invocation.subcommand.value, error=str(e))
            return EXIT_USAGE

    def _emit(self, line: str = "") -> None:
        print(line, file=self.stdout)

    def _graph(self, source: Optional[str], options: dict[str, Any]) -> tuple[Graph, str]:
        g, desc = load_graph(source)
        added = [parse_pair(text) for text in options.get("add_edge") or []]
        if added:
            g = add_edges(g, added)
            desc += "".join(f"+{u}-{v}" for u, v in added)
        return g, desc

    # Graph subcommands
    def _run_spectrum(self, source, options) -> int:
        g, _ = self._graph(source, options)
        spectrum = laplacian_spectrum(g)
        self._emit("spectrum=" + ",".join(fmt(x) for x in spectrum.values))
        return EXIT_OK

    def _run_ratio(self, source, options) -> int:
        g, _ = self._graph(source, options)
        report = sync_report(g)
        self._emit(f"r={fmt(report.r)} lambda2={fmt(report.lambda2)} lambdaN={fmt(report.lambda_n)}")
        return EXIT_OK

    def _run_complement(self, source, options) -> int:
        g, _ = self._graph(source, options)
        comp = complement(g)
        document = serialize_edge_list(comp) + "\n"
        if options.get("out"):
            self._write(options["out"], document)
            count, _ = connectivity(comp)
            self._emit(f"components={count}")
        else:
            self.stdout.write(document)
        return EXIT_OK

    def _run_metrics(self, source, options) -> int:
        g, _ = self._graph(source, options)
        report = metric_report(g)
        self._emit("betweenness=" + ",".join(fmt(b) for b in report.betweenness))
        self._emit(f"avg_distance={fmt(report.avg_distance)}")
        self._emit(f"diameter={report.diameter}")
        self._emit(f"degree_variance={fmt(report.degree_variance)}")
        self._emit(f"clustering={fmt(report.clustering)}")
        return EXIT_OK

    def _run_trajectory(self, source, options) -> int:
        g, desc = self._graph(source, options)
        strategy = StrategySpec(
            kind=_STRATEGIES[options.get("strategy") or "homog"],
            seed=options.get("seed") if options.get("seed") is not None else get_settings().experiments.default_seed,
        )
        steps = options.get("steps")
        steps = saturation_steps(g) if steps is None else steps
        trajectory = edge_add_trajectory(g, strategy, steps, seed_graph_desc=desc)

        if options.get("out"):
            export_csv(trajectory, options["out"])
        else:
            frame = trajectory_frame(trajectory)
            self.stdout.write(frame.to_csv(index=False, float_format="%.17g", lineterminator="\n"))

        if len(trajectory.points) >= 2:
            net_gain, decreasing, drawdown = trajectory_stats(trajectory)
            summary = f"net_gain={fmt(net_gain)} decreasing_steps={decreasing} max_drawdown={fmt(drawdown)}"
            print(summary, file=self.stdout if options.get("out") else self.stderr)
        return EXIT_OK

    # Verification
    def _run_verify(self, source, options) -> int:
        check = _CHECK_ALIASES.get((options.get("check") or "").lower())
        if check is None:
            raise UsageError(f"unknown check '{options.get('check')}'; known: {', '.join(VERIFY_CHECKS)}")
        seed = options.get("seed") if options.get("seed") is not None else get_settings().experiments.default_seed

        if check == "cycle-chords":
            lo, hi = parse_range(options.get("n") or "4..40")
            reports = verify_cycle_theorem(range(lo, hi + 1))
        elif check == "ratio-bound":
            n, _ = parse_range(options.get("n") or "10")
            m, _ = parse_range(options.get("m") or "16")
            reports = [sample_ratio_bound(n, m, options.get("samples") or 100_000, seed)]
        elif check == "betweenness" and not source:
            reports = [check_circulant_betweenness_example()]
        elif source:
            reports = self._verify_graph(check, source, options)
        else:
            _, max_nodes = parse_range(options.get("n") or "12")
            reports = run_property_suite(_SUITES[check], options.get("instances") or 100, max_nodes, seed)

        return self._report(reports, options.get("out"))

    def _verify_graph(self, check: str, source: str, options: dict[str, Any]) -> list[ClaimReport]:
        g, desc = self._graph(source, options)
        edges = [parse_pair(options["edge"])] if options.get("edge") else non_edges(g)

        if check == "monotonicity":
            return [verify_edge_monotonicity(g, e, instance=f"{desc} edge={e[0]}-{e[1]}") for e in edges]
        if check == "lambda2":
            return [verify_lambda2_preservation(g, e, instance=f"{desc} edge={e[0]}-{e[1]}") for e in edges]
        if check == "degree-bounds":
            return [verify_degree_bounds(g, instance=desc)]
        if check == "complement":
            return [verify_complement_identities(g, instance=desc)]
        if check == "even-cycle":
            return [verify_even_cycle_bound(g, instance=desc)]
        if check == "even-cycle-pair":
            return [verify_even_cycle_pair_bound(g, instance=desc)]
        if check == "betweenness":
            return [verify_betweenness_indicator(reference_graph("gamma1"), g, instance=f"{desc} vs gamma1")]
        return [verify_split_complement(g, instance=desc)]

    def _report(self, reports: list[ClaimReport], out: Optional[str]) -> int:
        if out:
            write_claim_reports(reports, out)
        else:
            for report in reports:
                self._emit(report.to_line())

        failures = sum(1 for report in reports if report.status == ClaimStatus.FAIL)
        skipped = sum(1 for report in reports if report.status == ClaimStatus.SKIPPED)
        print(f"checked={len(reports)} failed={failures} skipped={skipped}", file=self.stderr)
        return EXIT_FAIL if failures else EXIT_OK

    # Search
    def _run_scan(self, source, options) -> int:
        if options.get("n") is None:
            raise UsageError("scan needs --n")
        n, _ = parse_range(options["n"])
        m_range = parse_range(options["m"]) if options.get("m") else None
        table = exhaustive_scan(n, m_range)

        for row in table.rows:
            edges = ";".join(f"{u}-{v}" for u, v in row.argmax_edges)
            self._emit(
                f"m={row.m} max_r={fmt(row.max_r)} lambda2={fmt(row.lambda2)} lambdaN={fmt(row.lambda_n)} "
                f"count={row.n_connected_graphs} argmax={edges}"
            )
        for comparison in adjacent_comparisons(table):
            self._emit(comparison.to_line())
        pairs = nonmonotonicity_report(table)
        self._emit("nonmonotone=" + (",".join(f"{a}-{b}" for a, b in pairs) if pairs else "none"))

        if options.get("out"):
            export_best_table_csv(table, options["out"])
        return EXIT_OK

    def _run_anneal(self, source, options) -> int:
        if options.get("n") is None or options.get("m") is None:
            raise UsageError("anneal needs --n and --m")
        n, _ = parse_range(options["n"])
        m, _ = parse_range(options["m"])
        defaults = default_schedule()
        schedule = AnnealSchedule(
            t0=options["t0"] if options.get("t0") is not None else defaults.t0,
            cooling=options["cooling"] if options.get("cooling") is not None else defaults.cooling,
            iterations=options["iterations"] if options.get("iterations") is not None else defaults.iterations,
            restarts=options["restarts"] if options.get("restarts") is not None else defaults.restarts,
        )
        seed = options.get("seed") if options.get("seed") is not None else get_settings().experiments.default_seed
        result = anneal(n, m, seed, schedule)

        self._emit(f"best_r={fmt(result.best_r)} evaluations={result.evaluations} schedule={result.schedule_desc}")
        self._emit("edges=" + ";".join(f"{u}-{v}" for u, v in result.best_graph.sorted_edges()))
        if options.get("out"):
            self._write(options["out"], serialize_edge_list(result.best_graph) + "\n")
        return EXIT_OK

    def _write(self, path: str, text: str) -> None:
        try:
            Path(path).write_text(text, encoding="utf-8")
        except OSError as e:
            raise ExportIOError(path, str(e)) from e


def build_parser() -> argparse.ArgumentParser:
    parser = OneLineArgumentParser(prog="synclab", description="Laplacian eigenratio toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR (default from settings)")

    common = OneLineArgumentParser(add_help=False)
    common.add_argument("--out", help="write the result file here")
    common.add_argument("--seed", type=int)
    common.add_argument("--tol", type=float, help="symmetric solver tolerance")
    common.add_argument("--threads", type=int, help="worker processes for scans, sampling and suites")
    common.add_argument("--add-edge", action="append", metavar="U,V", help="add an edge after building the graph")

    subparsers = parser.add_subparsers(dest="subcommand", required=True, parser_class=OneLineArgumentParser)

    for name, help_text in (
        ("spectrum", "Laplacian spectrum"),
        ("ratio", "eigenratio r = lambda2 / lambdaN"),
        ("complement", "complement graph as an edge list"),
        ("metrics", "betweenness, distances, degree variance, clustering"),
    ):
        sub = subparsers.add_parser(name, parents=[common], help=help_text)
        sub.add_argument("source", help="generator string (cycle:6, kbip:2:3, ref:c5o, ...) or edge-list file")

    trajectory = subparsers.add_parser("trajectory", parents=[common], help="edge-adding experiment")
    trajectory.add_argument("source")
    trajectory.add_argument("--strategy", choices=sorted(_STRATEGIES), default="homog")
    trajectory.add_argument("--steps", type=int, help="edges to add (default: until complete)")

    verify = subparsers.add_parser("verify", parents=[common], help="check a claim and print one report per instance")
    verify.add_argument("check", help=f"one of {', '.join(VERIFY_CHECKS)} (or an alias such as t1)")
    verify.add_argument("source", nargs="?", help="graph to check; omit for the randomised suite")
    verify.add_argument("--edge", metavar="U,V", help="non-edge to test (default: every non-edge)")
    verify.add_argument("--n", help="N or LO..HI")
    verify.add_argument("--m", help="edge count for ratio-bound")
    verify.add_argument("--samples", type=int)
    verify.add_argument("--instances", type=int, help="random instances for suites")

    scan = subparsers.add_parser("scan", parents=[common], help="exhaustive best-ratio table")
    scan.add_argument("--n", required=True)
    scan.add_argument("--m", help="M or LO..HI (default: all connected edge counts)")

    annealing = subparsers.add_parser("anneal", parents=[common], help="simulated annealing for the best ratio")
    annealing.add_argument("--n", required=True)
    annealing.add_argument("--m", required=True)
    annealing.add_argument("--iterations", type=int)
    annealing.add_argument("--restarts", type=int)
    annealing.add_argument("--t0", type=float)
    annealing.add_argument("--cooling", type=float)
    return parser


def to_invocation(args: argparse.Namespace) -> CommandInvocation:
    options = {key: value for key, value in vars(args).items() if key not in ("subcommand", "source")}
    return CommandInvocation(
        subcommand=Subcommand(args.subcommand), graph_source=getattr(args, "source", None), options=options
    )


def apply_global_options(args: argparse.Namespace) -> None:
    """--tol and --threads travel through the SYNCLAB_* settings overrides."""
    if args.tol is not None:
        os.environ["SYNCLAB_TOL"] = repr(args.tol)
    if args.threads is not None:
        os.environ["SYNCLAB_WORKERS"] = str(args.threads)
    reset_settings()


def run(invocation: CommandInvocation, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    return CommandRunner(stdout, stderr).run(invocation)


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    apply_global_options(args)

    settings = get_settings()
    setup_logging(level=args.log_level or settings.logging.level, log_dir=settings.logging.log_dir)

    try:
        invocation = to_invocation(args)
    except ValidationError as e:
        print(f"error: {e.errors()[0]['msg']}", file=sys.stderr)
        return EXIT_USAGE
    return run(invocation)


if __name__ == "__main__":
    sys.exit(main())
