"""
Structural Metrics Service

Betweenness, distances, degree homogeneity and clustering: the structural
characteristics usually correlated with synchronizability.
"""

import networkx as nx
import numpy as np

from src.models.errors import DisconnectedGraphError
from src.models.schemas import Graph, MetricReport
from src.services.graph_core import connectivity


def _require_connected(g: Graph) -> None:
    count, _ = connectivity(g)
    if count != 1:
        raise DisconnectedGraphError(count)


def betweenness(g: Graph) -> tuple[float, ...]:
    """
    Unnormalized ordered-pair betweenness.

    For node v: sum over ordered pairs (s, t), s != t != v, of the fraction of
    shortest s-t paths through v. networkx counts unordered pairs for undirected
    graphs, so its values are doubled. Every Petersen node scores 6.
    """
    _require_connected(g)
    scores = nx.betweenness_centrality(g.to_networkx(), normalized=False)
    return tuple(2.0 * scores[v] for v in range(g.n))


def distance_stats(g: Graph) -> tuple[float, int]:
    """(average shortest-path length over unordered pairs, diameter)."""
    _require_connected(g)
    if g.n == 1:
        return 0.0, 0
    G = g.to_networkx()
    return float(nx.average_shortest_path_length(G)), int(nx.diameter(G))


def degree_homogeneity(g: Graph) -> float:
    """Population variance of the degree sequence; 0 iff regular."""
    return float(np.var(g.degrees()))


def clustering_coefficient(g: Graph) -> float:
    """Average local clustering; nodes of degree < 2 count as 0."""
    return float(nx.average_clustering(g.to_networkx()))


def metric_report(g: Graph) -> MetricReport:
    """All structural characteristics of a connected graph."""
    avg_distance, diameter = distance_stats(g)
    return MetricReport(
        betweenness=betweenness(g),
        avg_distance=avg_distance,
        diameter=diameter,
        degree_variance=degree_homogeneity(g),
        clustering=clustering_coefficient(g),
    )
