"""
Graph Core Service

Graph construction, named generators, single-edge mutation, complementation,
induced subgraphs, connectivity and the plain-text edge-list format.

Node labels are 0-based. A figure edge e{i, j} (1-based) is the pair (i-1, j-1).
"""

import itertools
from collections.abc import Iterable

import networkx as nx
import numpy as np

from src.models.errors import (
    EdgeExistsError,
    EdgeListParseError,
    EdgeMissingError,
    InvalidEdgeError,
    InvalidSpecError,
    InvalidSubsetError,
)
from src.models.schemas import Edge, EdgeAction, GeneratorKind, GeneratorSpec, Graph
from src.utils.logger import get_logger

logger = get_logger("graph_core")

_SHORT_KINDS = {
    "cycle": GeneratorKind.CYCLE,
    "path": GeneratorKind.PATH,
    "complete": GeneratorKind.COMPLETE,
    "kbip": GeneratorKind.COMPLETE_BIPARTITE,
    "petersen": GeneratorKind.PETERSEN,
    "ba": GeneratorKind.BARABASI_ALBERT,
    "star": GeneratorKind.STAR,
    "ref": GeneratorKind.REFERENCE,
}


def build_graph(n: int, pairs: Iterable[tuple[int, int]]) -> Graph:
    """
    Build a normalized graph from node pairs.

    Duplicates (in either orientation) collapse; the result does not depend on
    pair order.

    Raises:
        InvalidSpecError: n < 1
        InvalidEdgeError: self-loop or endpoint outside [0, n)
    """
    if n < 1:
        raise InvalidSpecError(f"node count must be >= 1, got {n}")

    edges = set()
    for u, v in pairs:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidEdgeError(f"endpoint out of range in ({u}, {v}) for n = {n}", (u, v))
        if u == v:
            raise InvalidEdgeError(f"self-loop at node {u}", (u, v))
        edges.add((min(u, v), max(u, v)))
    return Graph(n=n, edges=frozenset(edges))


def from_networkx(G: nx.Graph) -> Graph:
    """Convert a networkx graph with integer nodes 0..n-1."""
    return build_graph(G.number_of_nodes(), G.edges())


# Generators
def validate_generator_spec(spec: GeneratorSpec) -> None:
    """Raise InvalidSpecError when generator parameters are out of bounds."""
    kind = spec.kind
    if kind in (GeneratorKind.CYCLE,):
        if spec.n is None or spec.n < 3:
            raise InvalidSpecError(f"cycle needs N >= 3, got {spec.n}")
    elif kind in (GeneratorKind.PATH, GeneratorKind.COMPLETE):
        if spec.n is None or spec.n < 1:
            raise InvalidSpecError(f"{kind.value} needs N >= 1, got {spec.n}")
    elif kind == GeneratorKind.STAR:
        if spec.n is None or spec.n < 2:
            raise InvalidSpecError(f"star needs N >= 2, got {spec.n}")
    elif kind == GeneratorKind.COMPLETE_BIPARTITE:
        if spec.p is None or spec.q is None or spec.p < 1 or spec.q < 1:
            raise InvalidSpecError(f"complete_bipartite needs p, q >= 1, got ({spec.p}, {spec.q})")
    elif kind == GeneratorKind.BARABASI_ALBERT:
        if spec.n is None or spec.m_attach is None or not spec.n > spec.m_attach >= 1:
            raise InvalidSpecError(f"barabasi_albert needs N > m_attach >= 1, got ({spec.n}, {spec.m_attach})")
        if spec.seed is None or spec.seed < 0:
            raise InvalidSpecError("barabasi_albert needs a non-negative integer seed")
    elif kind == GeneratorKind.REFERENCE and not spec.name:
        raise InvalidSpecError("reference generator needs a graph name")


def generate(spec: GeneratorSpec) -> Graph:
    """
    Build a graph from a generator spec.

    The scale-free family starts from the complete graph on m_attach + 1 nodes and
    attaches each new node with m_attach distinct preferential edges, so it has
    m_attach * (N - m_attach) + C(m_attach, 2) edges.
    """
    validate_generator_spec(spec)
    kind = spec.kind

    if kind == GeneratorKind.CYCLE:
        G = nx.cycle_graph(spec.n)
    elif kind == GeneratorKind.PATH:
        G = nx.path_graph(spec.n)
    elif kind == GeneratorKind.COMPLETE:
        G = nx.complete_graph(spec.n)
    elif kind == GeneratorKind.STAR:
        G = nx.star_graph(spec.n - 1)
    elif kind == GeneratorKind.COMPLETE_BIPARTITE:
        G = nx.complete_bipartite_graph(spec.p, spec.q)
    elif kind == GeneratorKind.PETERSEN:
        # outer cycle 0..4, inner pentagram 5..9, spokes i -- i+5
        G = nx.petersen_graph()
    elif kind == GeneratorKind.BARABASI_ALBERT:
        G = nx.barabasi_albert_graph(
            spec.n, spec.m_attach, seed=spec.seed, initial_graph=nx.complete_graph(spec.m_attach + 1)
        )
    else:
        from src.services.reference_graphs import reference_graph

        return reference_graph(spec.name)

    return from_networkx(G)


def parse_generator_spec(text: str) -> GeneratorSpec:
    """
    Parse CLI generator strings: 'cycle:6', 'path:3', 'complete:4', 'star:5',
    'kbip:2:3', 'petersen', 'ba:50:2:12345', 'ref:c5o'.
    """
    parts = text.strip().split(":")
    kind = _SHORT_KINDS.get(parts[0].lower())
    if kind is None:
        raise InvalidSpecError(f"unknown generator '{parts[0]}' in '{text}'")

    if kind == GeneratorKind.REFERENCE:
        if len(parts) != 2 or not parts[1]:
            raise InvalidSpecError(f"expected 'ref:<name>', got '{text}'")
        return GeneratorSpec(kind=kind, name=parts[1])

    try:
        numbers = [int(p) for p in parts[1:]]
    except ValueError as e:
        raise InvalidSpecError(f"non-integer parameter in '{text}'") from e

    expected = {
        GeneratorKind.PETERSEN: 0,
        GeneratorKind.COMPLETE_BIPARTITE: 2,
        GeneratorKind.BARABASI_ALBERT: 3,
    }.get(kind, 1)
    if len(numbers) != expected:
        raise InvalidSpecError(f"'{parts[0]}' takes {expected} parameter(s), got {len(numbers)} in '{text}'")

    if kind == GeneratorKind.PETERSEN:
        spec = GeneratorSpec(kind=kind)
    elif kind == GeneratorKind.COMPLETE_BIPARTITE:
        spec = GeneratorSpec(kind=kind, p=numbers[0], q=numbers[1])
    elif kind == GeneratorKind.BARABASI_ALBERT:
        spec = GeneratorSpec(kind=kind, n=numbers[0], m_attach=numbers[1], seed=numbers[2])
    else:
        spec = GeneratorSpec(kind=kind, n=numbers[0])

    validate_generator_spec(spec)
    return spec


def random_connected_graph(n: int, m: int, rng: np.random.Generator) -> Graph:
    """
    Connected graph with exactly m edges: a random spanning tree plus m - (n - 1)
    random extra pairs. Not uniform over connected graphs.
    """
    total = n * (n - 1) // 2
    if n < 1 or not n - 1 <= m <= total:
        raise InvalidSpecError(f"no connected graph with n = {n}, m = {m}")

    order = rng.permutation(n)
    edges = set()
    for i in range(1, n):
        u, v = int(order[i]), int(order[rng.integers(i)])
        edges.add((min(u, v), max(u, v)))

    remaining = [pair for pair in itertools.combinations(range(n), 2) if pair not in edges]
    extra = rng.choice(len(remaining), size=m - len(edges), replace=False) if m > len(edges) else []
    edges.update(remaining[int(k)] for k in extra)
    return Graph(n=n, edges=frozenset(edges))


def circulant_graph(n: int, jumps: Iterable[int]) -> Graph:
    """
    Circulant C_n(jumps): node i joined to i +/- j (mod n) for every jump j.

    Raises:
        InvalidSpecError: n < 3 or a jump outside 1..n // 2
    """
    jumps = sorted(set(jumps))
    if n < 3 or not jumps or not all(1 <= j <= n // 2 for j in jumps):
        raise InvalidSpecError(f"circulant needs n >= 3 and jumps in 1..{n // 2}, got n = {n}, jumps = {jumps}")
    return from_networkx(nx.circulant_graph(n, jumps))


def random_regular_connected_graph(
    n: int, degree: int, rng: np.random.Generator, attempts: int = 100
) -> Graph | None:
    """
    Connected degree-regular graph on n nodes, or None when `attempts` draws of
    networkx.random_regular_graph all come out disconnected.

    Raises:
        InvalidSpecError: no degree-regular graph on n nodes exists
    """
    if not 0 <= degree < n or (n * degree) % 2:
        raise InvalidSpecError(f"no {degree}-regular graph on {n} nodes")
    for _ in range(attempts):
        g = from_networkx(nx.random_regular_graph(degree, n, seed=int(rng.integers(2**32))))
        if is_connected(g):
            return g
    return None


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    """Erdos-Renyi G(n, p) over lexicographically ordered pairs."""
    pairs = list(itertools.combinations(range(n), 2))
    keep = rng.random(len(pairs)) < p
    return Graph(n=n, edges=frozenset(pair for pair, flag in zip(pairs, keep) if flag))


# Mutation and derived graphs
def mutate_edge(g: Graph, u: int, v: int, action: EdgeAction) -> Graph:
    """
    Return a copy of g with one edge added or removed.

    Raises:
        InvalidEdgeError: self-loop or endpoint out of range
        EdgeExistsError: adding a present edge
        EdgeMissingError: removing an absent edge
    """
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise InvalidEdgeError(f"endpoint out of range in ({u}, {v}) for n = {g.n}", (u, v))
    if u == v:
        raise InvalidEdgeError(f"self-loop at node {u}", (u, v))

    edge = (min(u, v), max(u, v))
    action = EdgeAction(action)
    if action == EdgeAction.ADD:
        if edge in g.edges:
            raise EdgeExistsError(edge)
        return Graph(n=g.n, edges=g.edges | {edge})

    if edge not in g.edges:
        raise EdgeMissingError(edge)
    return Graph(n=g.n, edges=g.edges - {edge})


def add_edges(g: Graph, pairs: Iterable[tuple[int, int]]) -> Graph:
    """Apply several additions in order."""
    for u, v in pairs:
        g = mutate_edge(g, u, v, EdgeAction.ADD)
    return g


def non_edges(g: Graph) -> list[Edge]:
    """All absent pairs, lexicographically sorted."""
    return [pair for pair in itertools.combinations(range(g.n), 2) if pair not in g.edges]


def complement(g: Graph) -> Graph:
    """Same nodes, exactly the pairs absent from g."""
    return Graph(n=g.n, edges=frozenset(non_edges(g)))


def induced_subgraph(g: Graph, nodes: Iterable[int]) -> Graph:
    """
    Subgraph on a node subset, relabeled 0..k-1 in ascending original order.

    Raises:
        InvalidSubsetError: empty subset or node out of range
    """
    selected = sorted(set(nodes))
    if not selected:
        raise InvalidSubsetError("induced subgraph needs a nonempty node set")
    if selected[0] < 0 or selected[-1] >= g.n:
        raise InvalidSubsetError(f"node set {selected} not within [0, {g.n})")

    relabel = {node: i for i, node in enumerate(selected)}
    edges = frozenset((relabel[u], relabel[v]) for u, v in g.edges if u in relabel and v in relabel)
    return Graph(n=len(selected), edges=edges)


# Structure queries
def connectivity(g: Graph) -> tuple[int, tuple[int, ...]]:
    """
    Connected components.

    Returns:
        (component_count, labels) where labels[v] numbers components in order of
        their smallest node
    """
    components = sorted(nx.connected_components(g.to_networkx()), key=min)
    labels = [0] * g.n
    for component_id, component in enumerate(components):
        for node in component:
            labels[node] = component_id
    return len(components), tuple(labels)


def components(g: Graph) -> list[list[int]]:
    """Node lists of each component, ordered by smallest node."""
    return [sorted(c) for c in sorted(nx.connected_components(g.to_networkx()), key=min)]


def is_connected(g: Graph) -> bool:
    return connectivity(g)[0] == 1


def degree_profile(g: Graph) -> tuple[tuple[int, ...], int, int]:
    """(per-node degrees, d_min, d_max)."""
    degrees = tuple(int(d) for d in g.degrees())
    return degrees, min(degrees), max(degrees)


def is_bipartite(g: Graph) -> tuple[bool, tuple[frozenset[int], frozenset[int]] | None]:
    """Proper 2-coloring when one exists; part 0 holds node 0's color."""
    G = g.to_networkx()
    if not nx.is_bipartite(G):
        return False, None
    coloring = nx.bipartite.color(G)
    side = {}
    for component in nx.connected_components(G):
        anchor = coloring[min(component)]
        for node in component:
            side[node] = coloring[node] ^ anchor
    part0 = frozenset(node for node, color in side.items() if color == 0)
    part1 = frozenset(node for node, color in side.items() if color == 1)
    return True, (part0, part1)


# Edge-list document format
def serialize_edge_list(g: Graph) -> str:
    """Header 'n m', then one 'u v' line per edge in lexicographic order."""
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines)


def parse_edge_list(text: str) -> Graph:
    """
    Parse an edge-list document.

    Blank trailing lines are ignored.

    Raises:
        EdgeListParseError: malformed header or edge line, wrong edge count, invalid endpoints
    """
    lines = text.replace("\r\n", "\n").split("\n")
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise EdgeListParseError("missing header 'n m'", 1)

    header = lines[0].split()
    if len(header) != 2:
        raise EdgeListParseError(f"header must be 'n m', got '{lines[0]}'", 1)
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError as e:
        raise EdgeListParseError(f"header must hold two integers, got '{lines[0]}'", 1) from e
    if n < 1 or m < 0:
        raise EdgeListParseError(f"header needs n >= 1 and m >= 0, got '{lines[0]}'", 1)

    body = lines[1:]
    if len(body) < m:
        raise EdgeListParseError(f"header declares {m} edges but only {len(body)} edge lines follow", len(lines) + 1)
    if len(body) > m:
        raise EdgeListParseError(f"header declares {m} edges but {len(body)} edge lines follow", m + 2)

    pairs = []
    seen = set()
    for offset, line in enumerate(body, start=2):
        fields = line.split()
        if len(fields) != 2:
            raise EdgeListParseError(f"edge line must be 'u v', got '{line}'", offset)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError as e:
            raise EdgeListParseError(f"non-integer endpoint in '{line}'", offset) from e
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise EdgeListParseError(f"invalid edge ({u}, {v}) for n = {n}", offset)
        edge = (min(u, v), max(u, v))
        if edge in seen:
            raise EdgeListParseError(f"duplicate edge ({u}, {v})", offset)
        seen.add(edge)
        pairs.append(edge)

    return build_graph(n, pairs)
