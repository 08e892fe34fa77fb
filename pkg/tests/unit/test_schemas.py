# tests/unit/test_schemas.py
"""
Validation rules of the pydantic models: the invariants every graph, spectrum and
report carries regardless of which service produced it.
"""

import pytest
from pydantic import ValidationError

from src.models.schemas import (
    AnnealResult,
    BestRow,
    BestTable,
    CirculantMatch,
    ClaimId,
    ClaimReport,
    ClaimStatus,
    CommandInvocation,
    Graph,
    Spectrum,
    StrategyKind,
    StrategySpec,
    Subcommand,
    SyncReport,
    Trajectory,
    TrajectoryPoint,
)

pytestmark = pytest.mark.unit


class TestGraph:
    def test_edges_must_be_ordered(self):
        with pytest.raises(ValidationError):
            Graph(n=3, edges=frozenset({(1, 0)}))

    def test_edges_within_range(self):
        with pytest.raises(ValidationError):
            Graph(n=3, edges=frozenset({(0, 3)}))

    def test_frozen(self, cycle):
        g = cycle(4)
        with pytest.raises(ValidationError):
            g.n = 5

    def test_laplacian_rows_sum_to_zero(self, petersen):
        L = petersen.laplacian_matrix()
        assert (L.sum(axis=1) == 0).all()
        assert L[0, 0] == 3


class TestSpectrum:
    def test_must_be_sorted(self):
        with pytest.raises(ValidationError, match="sorted"):
            Spectrum(values=(0.0, 2.0, 1.0))

    def test_rounding_below_zero_tolerated(self):
        assert Spectrum(values=(-1e-14, 1.0, 3.0)).lambda2 == 1.0

    def test_negative_rejected(self):
        with pytest.raises(ValidationError, match="negative"):
            Spectrum(values=(-0.5, 1.0))


class TestSyncReport:
    def test_ratio_must_match(self):
        with pytest.raises(ValidationError):
            SyncReport(lambda2=1.0, lambda_n=4.0, r=0.3, mult2=2, mult_n=1)

    def test_ratio_clamped_to_one(self):
        report = SyncReport(lambda2=5.0, lambda_n=5.0 - 1e-15, r=1.0, mult2=4, mult_n=4)
        assert report.r == 1.0

    def test_zero_lambda2_rejected(self):
        with pytest.raises(ValidationError):
            SyncReport(lambda2=0.0, lambda_n=2.0, r=0.0, mult2=1, mult_n=1)


class TestClaimReport:
    def test_failure_needs_violation(self):
        with pytest.raises(ValidationError, match="violation"):
            ClaimReport(claim_id=ClaimId.L1, instance="n=5 m=5", status=ClaimStatus.FAIL, witness={})

    def test_instance_is_single_line(self):
        with pytest.raises(ValidationError):
            ClaimReport(claim_id=ClaimId.T1, instance="N=5\tchord", status=ClaimStatus.PASS)

    def test_skipped_counts_as_passed(self):
        report = ClaimReport(claim_id=ClaimId.L4, instance="x", status=ClaimStatus.SKIPPED)
        assert report.passed

    def test_line_format(self):
        report = ClaimReport(
            claim_id=ClaimId.L6,
            instance="n=6 m=6",
            status=ClaimStatus.PASS,
            witness={"lambdaN": 4.000000000000001, "cycle": [0, 1, 2, 3], "equality_case": True},
        )
        assert report.to_line() == "L6\tn=6 m=6\tPASS\tlambdaN=4; cycle=0,1,2,3; equality_case=true"


class TestTrajectoryModels:
    def test_starts_at_zero(self):
        point = TrajectoryPoint(m_add=1, r=0.2, lambda2=0.8, lambda_n=4.0)
        with pytest.raises(ValidationError, match="m_add = 0"):
            Trajectory(
                points=(point,),
                seed_graph_desc="cycle:4",
                strategy=StrategySpec(kind=StrategyKind.RANDOM, seed=1),
            )

    def test_strictly_increasing(self):
        points = tuple(TrajectoryPoint(m_add=m, r=0.2, lambda2=0.8, lambda_n=4.0) for m in (0, 2, 2))
        with pytest.raises(ValidationError):
            Trajectory(
                points=points,
                seed_graph_desc="cycle:4",
                strategy=StrategySpec(kind=StrategyKind.RANDOM, seed=1),
            )

    def test_seed_range(self):
        with pytest.raises(ValidationError):
            StrategySpec(kind=StrategyKind.DEGREE_HOMOGENEOUS, seed=-1)
        assert StrategySpec(kind=StrategyKind.RANDOM, seed=2**64 - 1).seed == 2**64 - 1


class TestSearchModels:
    def _row(self, m, r=0.5):
        edges = tuple([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)][:m])
        return BestRow(m=m, max_r=r, lambda2=r, lambda_n=1.0, argmax_edges=edges, n_connected_graphs=1)

    def test_argmax_size(self):
        with pytest.raises(ValidationError):
            BestRow(m=4, max_r=0.5, lambda2=2.0, lambda_n=4.0, argmax_edges=((0, 1),), n_connected_graphs=3)

    def test_rows_consecutive(self):
        with pytest.raises(ValidationError, match="consecutive"):
            BestTable(n=4, rows=(self._row(3), self._row(5)))

    def test_complete_row_has_ratio_one(self):
        with pytest.raises(ValidationError, match="max_r = 1"):
            BestTable(n=4, rows=(self._row(6, r=0.9),))

    def test_row_lookup(self):
        table = BestTable(n=4, rows=(self._row(3), self._row(4)))
        assert table.row(4).m == 4
        with pytest.raises(KeyError):
            table.row(6)

    def test_anneal_result_must_be_connected(self):
        g = Graph(n=4, edges=frozenset({(0, 1), (1, 2), (0, 2)}))
        with pytest.raises(ValidationError, match="connected"):
            AnnealResult(n=4, m=3, best_graph=g, best_r=0.25, schedule_desc="x", evaluations=1)

    def test_circulant_match_needs_betweenness_per_node(self, cycle):
        report = SyncReport(lambda2=1.0, lambda_n=4.0, r=0.25, mult2=2, mult_n=1)
        match = CirculantMatch(graph=cycle(6), jumps=(1,), report=report, betweenness=(4.0,) * 6)
        assert match.describe() == "C6(1)"
        with pytest.raises(ValidationError, match="per node"):
            CirculantMatch(graph=cycle(6), jumps=(1,), report=report, betweenness=(4.0,) * 5)


class TestCommandInvocation:
    def test_graph_commands_need_source(self):
        with pytest.raises(ValidationError, match="graph source"):
            CommandInvocation(subcommand=Subcommand.RATIO)

    def test_scan_takes_no_source(self):
        with pytest.raises(ValidationError):
            CommandInvocation(subcommand=Subcommand.SCAN, graph_source="cycle:6")

    def test_verify_source_optional(self):
        assert CommandInvocation(subcommand=Subcommand.VERIFY, options={"check": "cycle-chords"}).graph_source is None
