"""
Reference Graph Catalog

Named small graphs with known eigenratios. Figure labels are 1-based; every entry
below is written with 1-based pairs and shifted to 0-based on construction.
"""

from src.models.errors import InvalidSpecError
from src.models.schemas import GeneratorKind, GeneratorSpec, Graph
from src.services.graph_core import build_graph, complement, generate

# name -> (node count, 1-based edge list)
_FIGURE_GRAPHS: dict[str, tuple[int, list[tuple[int, int]]]] = {
    "c5": (5, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]),
    "c5_chord": (5, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (1, 3)]),
    "c6": (6, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)]),
    "c6_chord13": (6, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1), (1, 3)]),
    "c6_chord14": (6, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1), (1, 4)]),
    # complete bipartite between {1, 3, 5} and {2, 4}
    "c5o": (5, [(1, 2), (1, 4), (3, 2), (3, 4), (5, 2), (5, 4)]),
    "c5o_plus": (5, [(1, 2), (1, 4), (3, 2), (3, 4), (5, 2), (5, 4), (1, 5), (3, 5)]),
}

# Expected eigenratios (4 decimals as printed in the source figures)
REFERENCE_RATIOS: dict[str, float] = {
    "c5": 0.3820,
    "c5_chord": 0.2993,
    "c6": 0.25,
    "c6_chord13": 0.2265,
    "c6_chord14": 0.2,
    "c5o": 0.4,
    "c5o_plus": 0.6,
    "gamma1": 0.4,
}


def reference_names() -> list[str]:
    return sorted([*_FIGURE_GRAPHS, "c4_complement", "gamma1"])


def figure_graph(n: int, one_based_pairs: list[tuple[int, int]]) -> Graph:
    """Build a graph from 1-based figure labels."""
    return build_graph(n, [(u - 1, v - 1) for u, v in one_based_pairs])


def reference_graph(name: str) -> Graph:
    """
    Look up a named graph.

    'gamma1' is the Petersen graph: 10 nodes, 15 edges, 3-regular, Laplacian spectrum
    {0, 2 (x5), 5 (x4)}, eigenratio 2/5 and ordered-pair betweenness 6 at every node.
    """
    key = name.lower()
    if key in _FIGURE_GRAPHS:
        n, pairs = _FIGURE_GRAPHS[key]
        return figure_graph(n, pairs)
    if key == "c4_complement":
        return complement(generate(GeneratorSpec(kind=GeneratorKind.CYCLE, n=4)))
    if key == "gamma1":
        return generate(GeneratorSpec(kind=GeneratorKind.PETERSEN))
    raise InvalidSpecError(f"unknown reference graph '{name}'; known: {', '.join(reference_names())}")
