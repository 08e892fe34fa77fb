# tests/unit/test_search.py
import math

import pytest

from src.models.errors import DeskScaleExceededError, ExportIOError, InvalidSpecError
from src.models.schemas import AnnealSchedule, BestRow, BestTable
from src.services.graph_core import build_graph, connectivity, is_connected, random_regular_connected_graph
from src.services.search import (
    _anneal_switching,
    adjacent_comparisons,
    anneal,
    circulant_spectral_matches,
    default_schedule,
    exhaustive_scan,
    export_best_table_csv,
    nonmonotonicity_report,
    regular_degree,
)
from src.services.spectra import sync_report

pytestmark = pytest.mark.unit

SHORT = AnnealSchedule(t0=0.1, cooling=0.995, iterations=1500, restarts=3)
WIDE = AnnealSchedule(t0=0.2, cooling=0.998, iterations=3000, restarts=6)


@pytest.fixture
def scan_n5():
    return exhaustive_scan(5)


def _table(n, ratios):
    """BestTable with placeholder argmax graphs, one row per m starting at n - 1."""
    rows = []
    for offset, r in enumerate(ratios):
        m = n - 1 + offset
        edges = tuple((0, k) for k in range(1, n))
        extra = [(u, v) for u in range(1, n) for v in range(u + 1, n)][: m - (n - 1)]
        rows.append(
            BestRow(m=m, max_r=r, lambda2=r, lambda_n=1.0, argmax_edges=edges + tuple(extra), n_connected_graphs=1)
        )
    return BestTable(n=n, rows=tuple(rows))


class TestExhaustiveScan:
    def test_four_nodes(self):
        table = exhaustive_scan(4)
        assert [row.m for row in table.rows] == [3, 4, 5, 6]
        assert [row.max_r for row in table.rows] == pytest.approx([0.25, 0.5, 0.5, 1.0])
        assert sum(row.n_connected_graphs for row in table.rows) == 38

    def test_ties_go_to_lexicographically_least_edges(self):
        table = exhaustive_scan(4)
        assert table.row(3).argmax_edges == ((0, 1), (0, 2), (0, 3))
        assert table.row(4).argmax_edges == ((0, 1), (0, 2), (1, 3), (2, 3))

    def test_five_nodes(self, scan_n5, reference_values):
        expected = reference_values["scan"]["n5"]
        tol = reference_values["tolerance"]
        for key, value in expected.items():
            assert scan_n5.row(int(key[1:])).max_r == pytest.approx(value, abs=tol)
        assert scan_n5.row(4).max_r == pytest.approx(0.2)
        assert scan_n5.row(4).n_connected_graphs == 125

    def test_connected_graph_count(self, scan_n5):
        assert sum(row.n_connected_graphs for row in scan_n5.rows) == 728
        assert scan_n5.row(10).n_connected_graphs == 1

    def test_argmax_is_connected_with_m_edges(self, scan_n5):
        for row in scan_n5.rows:
            assert len(row.argmax_edges) == row.m
            assert row.lambda2 / row.lambda_n == pytest.approx(min(1.0, row.max_r))

    def test_partial_range(self, scan_n5):
        table = exhaustive_scan(5, (6, 8))
        assert [row.m for row in table.rows] == [6, 7, 8]
        assert table.row(7) == scan_n5.row(7)

    @pytest.mark.slow
    def test_worker_count_does_not_change_result(self, scan_n5):
        assert exhaustive_scan(5, workers=2) == scan_n5

    @pytest.mark.slow
    def test_six_nodes_seven_edges(self, reference_values):
        """The optimum is 2 - sqrt(3) = (3 - sqrt(3)) / (3 + sqrt(3)), just below the published 0.2684."""
        expected = reference_values["scan"]["n6_m7"]
        row = exhaustive_scan(6, (7, 7)).row(7)
        assert row.max_r == pytest.approx(expected["max_r"], abs=1e-9)
        assert row.lambda2 == pytest.approx(expected["lambda2"], abs=1e-9)
        assert row.lambda_n == pytest.approx(expected["lambdaN"], abs=1e-9)
        assert row.max_r < 0.2684 - 4e-4

    def test_too_large(self):
        with pytest.raises(DeskScaleExceededError) as exc_info:
            exhaustive_scan(9)
        assert exc_info.value.count == 2**36

    @pytest.mark.parametrize("n,m_range", [(1, None), (5, (3, 6)), (5, (6, 11)), (5, (8, 7))])
    def test_invalid(self, n, m_range):
        with pytest.raises(InvalidSpecError):
            exhaustive_scan(n, m_range)


class TestComparisons:
    def test_five_node_verdicts(self, scan_n5):
        verdicts = {c.m: c.verdict for c in adjacent_comparisons(scan_n5)}
        assert verdicts[6] == "equal"
        assert verdicts[7] == "increase"
        assert verdicts[9] == "increase"

    def test_no_strict_decrease_on_five_nodes(self, scan_n5):
        assert nonmonotonicity_report(scan_n5) == []

    def test_decrease_detected(self):
        table = _table(5, [0.2, 0.45, 0.4, 0.4])
        assert nonmonotonicity_report(table) == [(5, 6)]
        assert adjacent_comparisons(table)[1].to_line() == "m=5->6 max_r=0.45 next_max_r=0.4 decrease"

    def test_equality_within_tolerance(self):
        table = _table(5, [0.3, 0.3 + 5e-10])
        assert adjacent_comparisons(table)[0].verdict == "equal"


class TestBestTableCsv:
    def test_columns_and_edges(self, tmp_path):
        table = exhaustive_scan(4)
        lines = export_best_table_csv(table, tmp_path / "n4.csv").read_text().splitlines()
        assert lines[0] == "m,max_r,lambda2,lambdaN,argmax_edge_list,count_connected"
        fields = lines[1].split(",")
        assert fields[0] == "3"
        assert float(fields[1]) == pytest.approx(0.25)
        assert fields[4:] == ["0-1;0-2;0-3", "16"]
        assert len(lines) == 5

    def test_unwritable(self, tmp_path):
        with pytest.raises(ExportIOError):
            export_best_table_csv(exhaustive_scan(4), tmp_path / "no" / "such" / "dir.csv")


class TestAnneal:
    def test_finds_star_for_trees(self):
        result = anneal(5, 4, seed=1, schedule=WIDE)
        assert result.best_r == pytest.approx(0.2)
        assert result.best_graph.m == 4
        assert connectivity(result.best_graph)[0] == 1

    def test_matches_exhaustive_optimum(self, scan_n5):
        result = anneal(5, 6, seed=3, schedule=WIDE)
        assert result.best_r == pytest.approx(scan_n5.row(6).max_r)

    def test_deterministic(self):
        assert anneal(6, 8, seed=11, schedule=SHORT) == anneal(6, 8, seed=11, schedule=SHORT)

    @pytest.mark.slow
    def test_worker_count_does_not_change_result(self):
        assert anneal(6, 8, seed=5, schedule=SHORT, workers=1) == anneal(6, 8, seed=5, schedule=SHORT, workers=2)

    def test_complete_graph(self):
        result = anneal(4, 6, seed=0, schedule=SHORT)
        assert result.best_r == pytest.approx(1.0)
        assert result.evaluations == SHORT.restarts

    def test_counts_evaluations(self):
        result = anneal(5, 5, seed=2, schedule=SHORT)
        assert result.evaluations == SHORT.restarts * (SHORT.iterations + 1)
        assert result.schedule_desc == "T0=0.1 cooling=0.995 iters=1500 restarts=3"

    def test_survives_temperature_underflow(self):
        """0.1 * 0.5^k reaches 0.0 long before 3000 iterations."""
        schedule = AnnealSchedule(t0=0.1, cooling=0.5, iterations=3000, restarts=1)
        result = anneal(6, 8, seed=1, schedule=schedule)
        assert result.evaluations == 3001
        assert 0.0 < result.best_r <= 1.0

    @pytest.mark.parametrize(
        "n,m,degree", [(10, 15, 3), (8, 16, 4), (6, 9, 3), (5, 5, None), (4, 6, None), (10, 16, None)]
    )
    def test_regular_degree(self, n, m, degree):
        assert regular_degree(n, m) == degree

    def test_switching_keeps_degrees(self, rng):
        start = random_regular_connected_graph(8, 3, rng)
        best_r, best_edges, evaluations = _anneal_switching(start, SHORT, rng, "lapack")
        best = build_graph(8, best_edges)
        assert set(best.degrees()) == {3}
        assert is_connected(best)
        assert best_r == pytest.approx(sync_report(best).r)
        assert 1 < evaluations <= SHORT.iterations + 1

    def test_regular_edge_count(self):
        result = anneal(8, 12, seed=4, schedule=SHORT)
        assert is_connected(result.best_graph)
        assert result.best_graph.m == 12
        assert result.evaluations <= SHORT.restarts * (SHORT.iterations + 1)

    @pytest.mark.slow
    def test_finds_petersen_spectrum(self):
        schedule = AnnealSchedule(t0=0.1, cooling=0.999, iterations=6000, restarts=6)
        result = anneal(10, 15, seed=1, schedule=schedule)
        assert result.best_r == pytest.approx(0.4, abs=1e-6)
        assert set(result.best_graph.degrees()) == {3}

    def test_default_schedule_from_settings(self):
        schedule = default_schedule()
        assert schedule.iterations == 2000
        assert schedule.restarts == 4

    @pytest.mark.parametrize("n,m", [(1, 0), (5, 3), (5, 11)])
    def test_invalid(self, n, m):
        with pytest.raises(InvalidSpecError):
            anneal(n, m, seed=0, schedule=SHORT)


class TestCirculantSearch:
    def test_twenty_edges_on_ten_nodes(self):
        root5 = math.sqrt(5)
        matches = circulant_spectral_matches(10, 20, 5 - root5, 5 + root5)
        assert [match.jumps for match in matches] == [(1, 4), (2, 3)]
        assert matches[0].describe() == "C10(1,4)"
        assert matches[0].report.r == pytest.approx((5 - root5) / (5 + root5))
        assert matches[0].betweenness == pytest.approx((5.0,) * 10)

    def test_petersen_spectrum_has_no_circulant(self):
        assert circulant_spectral_matches(10, 15, 2.0, 5.0) == []

    def test_cycle_matches_itself(self):
        matches = circulant_spectral_matches(6, 6, 1.0, 4.0)
        assert [match.jumps for match in matches] == [(1,)]

    def test_too_small(self):
        with pytest.raises(InvalidSpecError):
            circulant_spectral_matches(2, 1, 1.0, 1.0)
