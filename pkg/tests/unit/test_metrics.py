# tests/unit/test_metrics.py
import pytest

from src.models.errors import DisconnectedGraphError
from src.services.graph_core import build_graph
from src.services.metrics import (
    betweenness,
    clustering_coefficient,
    degree_homogeneity,
    distance_stats,
    metric_report,
)

pytestmark = pytest.mark.unit


def test_petersen_betweenness_is_six_everywhere(petersen):
    """Ordered-pair convention: every node of the Petersen graph scores exactly 6"""
    assert betweenness(petersen) == (6.0,) * 10


def test_path_betweenness(graph):
    assert betweenness(graph("path:3")) == (0.0, 2.0, 0.0)


def test_star_betweenness(graph):
    # centre lies on every ordered leaf pair: 4 * 3
    assert betweenness(graph("star:5"))[0] == pytest.approx(12.0)


def test_cycle_distances(cycle):
    avg, diameter = distance_stats(cycle(6))
    assert avg == pytest.approx(1.8)
    assert diameter == 3


def test_single_node_distances():
    assert distance_stats(build_graph(1, [])) == (0.0, 0)


def test_complete_graph_distances(graph):
    assert distance_stats(graph("complete:5")) == (pytest.approx(1.0), 1)


def test_regular_graph_has_zero_variance(petersen):
    assert degree_homogeneity(petersen) == 0.0


def test_star_variance(graph):
    # degrees 4,1,1,1,1: mean 1.6
    assert degree_homogeneity(graph("star:5")) == pytest.approx(1.44)


def test_clustering(graph, petersen):
    assert clustering_coefficient(graph("complete:4")) == pytest.approx(1.0)
    assert clustering_coefficient(petersen) == 0.0
    assert clustering_coefficient(graph("path:3")) == 0.0


def test_disconnected_rejected():
    g = build_graph(4, [(0, 1), (2, 3)])
    with pytest.raises(DisconnectedGraphError):
        betweenness(g)
    with pytest.raises(DisconnectedGraphError):
        distance_stats(g)


def test_metric_report_compares_chords(graph):
    """On C6 the length-2 chord shortens three pairs, the diametral chord only one"""
    short_chord = metric_report(graph("ref:c6_chord13"))
    long_chord = metric_report(graph("ref:c6_chord14"))
    assert short_chord.avg_distance == pytest.approx(1.6)
    assert long_chord.avg_distance == pytest.approx(25 / 15)
    assert short_chord.clustering > 0.0
    assert long_chord.clustering == 0.0
    assert len(short_chord.betweenness) == 6
