"""
Verification Service

Executable checks of the edge-addition and complement results. Every check returns a
ClaimReport: PASS, FAIL (with the violating quantity in witness['violation']) or
SKIPPED when the premise does not hold for the instance.
"""

import itertools
import math
from collections.abc import Iterable
from pathlib import Path
from typing import Any, Optional

import networkx as nx
import numpy as np

from src.models.errors import (
    DeskScaleExceededError,
    DisconnectedGraphError,
    EdgeExistsError,
    ExportIOError,
    InvalidSpecError,
    NotApplicableError,
)
from src.models.schemas import ClaimId, ClaimReport, ClaimStatus, Edge, EdgeAction, GeneratorKind, GeneratorSpec, Graph
from src.services.batched import adjacency_from_pair_indices, connected_mask, edges_from_pair_indices, eigenratios
from src.services.graph_core import (
    build_graph,
    complement,
    components,
    connectivity,
    degree_profile,
    from_networkx,
    generate,
    induced_subgraph,
    is_connected,
    mutate_edge,
    non_edges,
    random_connected_graph,
    random_graph,
)
from src.services.metrics import betweenness
from src.services.reference_graphs import reference_graph
from src.services.search import circulant_spectral_matches
from src.services.spectra import (
    complement_spectrum,
    eigen_multiplicity,
    laplacian_spectrum,
    max_spectral_gap,
    sync_report,
)
from src.utils.config import get_settings
from src.utils.debug import debug_dump
from src.utils.logger import OperationLogger, get_logger, log_claim_result, log_performance
from src.utils.parallel import fan_out

logger = get_logger("verify")

SUITE_KINDS = (
    "monotonicity",
    "degree_bounds",
    "lambda2",
    "complement",
    "even_cycle",
    "even_cycle_pair",
    "split_complement",
)

SAMPLING_EVIDENCE = "non-exhaustive random sampling"


def _describe(g: Graph, edge: Optional[Edge] = None) -> str:
    text = f"n={g.n} m={g.m}"
    if edge is not None:
        text += f" edge={edge[0]}-{edge[1]}"
    return text


def _edge_strings(edges: Iterable[Edge]) -> list[str]:
    return [f"{u}-{v}" for u, v in edges]


def _finish(claim_id: ClaimId, instance: str, status: ClaimStatus, witness: dict[str, Any]) -> ClaimReport:
    """Build the report, log it, and dump failing witnesses for later inspection."""
    report = ClaimReport(claim_id=claim_id, instance=instance, status=status, witness=witness)
    log_claim_result(logger, claim_id.value, instance, status.value, **witness)

    if status == ClaimStatus.FAIL:
        debug = get_settings().debug
        if debug.dump_failures:
            debug_dump(report.model_dump(mode="json"), f"claim_{claim_id.value}", debug.output_dir)
    return report


def _status(ok: bool) -> ClaimStatus:
    return ClaimStatus.PASS if ok else ClaimStatus.FAIL


def _require_connected(g: Graph) -> None:
    count, _ = connectivity(g)
    if count != 1:
        raise DisconnectedGraphError(count)


def _normalize_new_edge(g: Graph, e: Edge) -> Edge:
    u, v = int(e[0]), int(e[1])
    edge = (min(u, v), max(u, v))
    if g.has_edge(*edge):
        raise EdgeExistsError(edge)
    return edge


def _tol() -> float:
    return get_settings().spectra.tol


# Single-instance checks
def verify_edge_monotonicity(g: Graph, e: Edge, instance: Optional[str] = None) -> ClaimReport:
    """
    No Laplacian eigenvalue decreases when a non-edge is added.

    Raises:
        EdgeExistsError: e is already an edge of g
        DisconnectedGraphError: g is not connected
    """
    edge = _normalize_new_edge(g, e)
    _require_connected(g)
    augmented = mutate_edge(g, edge[0], edge[1], EdgeAction.ADD)

    before = laplacian_spectrum(g).as_array()
    after = laplacian_spectrum(augmented).as_array()
    drops = before - after
    worst = int(np.argmax(drops))
    allowed = _tol() * max(1.0, float(after[-1]))

    witness: dict[str, Any] = {
        "lambda2_before": float(before[1]),
        "lambda2_after": float(after[1]),
        "lambdaN_before": float(before[-1]),
        "lambdaN_after": float(after[-1]),
        "max_drop": float(drops[worst]),
    }
    ok = drops[worst] <= allowed
    if not ok:
        witness["violation"] = float(drops[worst])
        witness["index"] = worst + 1
    return _finish(ClaimId.L1, instance or _describe(g, edge), _status(ok), witness)


def verify_degree_bounds(g: Graph, instance: Optional[str] = None) -> ClaimReport:
    """
    lambdaN >= d_max + 1 with equality iff d_max = n - 1, and lambda2 <= d_min unless
    g is complete.
    """
    if g.n < 2:
        raise InvalidSpecError("degree bounds need at least 2 nodes")
    _require_connected(g)

    spectrum = laplacian_spectrum(g)
    _, d_min, d_max = degree_profile(g)
    lambda2, lambda_n = spectrum.lambda2, spectrum.lambda_max
    eps = _tol() * max(1.0, lambda_n)
    is_complete = g.m == g.n * (g.n - 1) // 2

    at_equality = bool(abs(lambda_n - (d_max + 1)) <= eps)
    violations = []
    if lambda_n < d_max + 1 - eps:
        violations.append(d_max + 1 - lambda_n)
    if at_equality != (d_max == g.n - 1):
        violations.append(abs(lambda_n - (d_max + 1)))
    if not is_complete and lambda2 > d_min + eps:
        violations.append(lambda2 - d_min)

    witness: dict[str, Any] = {
        "lambdaN": lambda_n,
        "d_max": d_max,
        "lambda2": lambda2,
        "d_min": d_min,
        "equality_case": at_equality,
        "complete": is_complete,
    }
    if violations:
        witness["violation"] = float(max(violations))
    return _finish(ClaimId.L2, instance or _describe(g), _status(not violations), witness)


def verify_lambda2_preservation(g: Graph, e: Edge, instance: Optional[str] = None) -> ClaimReport:
    """
    A repeated lambda2 survives any single edge addition. SKIPPED when lambda2 is simple.

    Raises:
        EdgeExistsError: e is already an edge of g
    """
    edge = _normalize_new_edge(g, e)
    _require_connected(g)
    label = instance or _describe(g, edge)

    spectrum = laplacian_spectrum(g)
    mult2 = eigen_multiplicity(spectrum, spectrum.lambda2)
    if mult2 < 2:
        return _finish(
            ClaimId.L4, label, ClaimStatus.SKIPPED, {"reason": "lambda2 is simple", "mult2": mult2}
        )

    after = laplacian_spectrum(mutate_edge(g, edge[0], edge[1], EdgeAction.ADD))
    delta = abs(after.lambda2 - spectrum.lambda2)
    ok = delta <= _tol() * max(1.0, after.lambda_max)

    witness: dict[str, Any] = {
        "lambda2_before": spectrum.lambda2,
        "lambda2_after": after.lambda2,
        "mult2": mult2,
        "delta": delta,
    }
    if not ok:
        witness["violation"] = delta
    return _finish(ClaimId.L4, label, _status(ok), witness)


def verify_complement_identities(g: Graph, instance: Optional[str] = None) -> ClaimReport:
    """
    Complement identities:
      (i)   lambdaN <= n
      (ii)  lambdaN = n iff the complement is disconnected
      (iii) eigenvalue n has multiplicity q - 1 (q = complement component count)
      (iv)  lambda_i(complement) = n - lambda_{n-i+2}(g) elementwise
    """
    settings = get_settings()
    n = g.n
    spectrum = laplacian_spectrum(g)
    comp_graph = complement(g)
    comp_spectrum = laplacian_spectrum(comp_graph)
    q, _ = connectivity(comp_graph)

    lambda_n = spectrum.lambda_max
    eps = settings.verify.equality_tol * max(1.0, float(n))
    mult_at_n = eigen_multiplicity(spectrum, float(n))
    pairing_gap = max_spectral_gap(complement_spectrum(spectrum), comp_spectrum)

    checks = {
        "bounded_by_n": lambda_n <= n + eps,
        "equality_iff_split": (abs(lambda_n - n) <= eps) == (q > 1),
        "multiplicity": mult_at_n == q - 1,
        "pairing": pairing_gap <= settings.verify.identity_tol,
    }
    witness: dict[str, Any] = {
        "lambdaN": lambda_n,
        "n": n,
        "complement_components": q,
        "multiplicity_at_n": mult_at_n,
        "pairing_gap": pairing_gap,
    }
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        witness["failed"] = failed
        witness["violation"] = pairing_gap if failed == ["pairing"] else abs(lambda_n - n)
    return _finish(ClaimId.L5, instance or _describe(g), _status(not failed), witness)


def split_complement_ratio(g: Graph) -> float:
    """
    r(g) = (n - max_k lambda_max(H_k)) / n, where H_1..H_q are the q >= 2 components of
    the complement of g. Any number of components qualifies, not only two.

    Raises:
        NotApplicableError: g disconnected, or its complement connected
    """
    count, _ = connectivity(g)
    if count != 1:
        raise NotApplicableError(f"graph is disconnected ({count} components)")

    parts = components(complement(g))
    if len(parts) < 2:
        raise NotApplicableError("complement is connected")

    largest = max(laplacian_spectrum(induced_subgraph(complement(g), part)).lambda_max for part in parts)
    return (g.n - largest) / g.n


def verify_split_complement(g: Graph, instance: Optional[str] = None) -> ClaimReport:
    """Compare split_complement_ratio with the directly computed eigenratio."""
    label = instance or _describe(g)
    try:
        formula = split_complement_ratio(g)
    except NotApplicableError as e:
        return _finish(ClaimId.SPLIT_COMPL, label, ClaimStatus.SKIPPED, {"reason": str(e)})

    direct = sync_report(g).r
    gap = abs(formula - direct)
    ok = gap <= get_settings().verify.identity_tol
    witness: dict[str, Any] = {
        "r_formula": formula,
        "r_direct": direct,
        "gap": gap,
        "components": len(components(complement(g))),
    }
    if not ok:
        witness["violation"] = gap
    return _finish(ClaimId.SPLIT_COMPL, label, _status(ok), witness)


def _induces_cycle(neighbors: list[set[int]], subset: tuple[int, ...]) -> bool:
    members = set(subset)
    if any(len(neighbors[v] & members) != 2 for v in subset):
        return False

    # 2-regular on the subset; it is one cycle iff the walk covers every member
    previous, current = None, subset[0]
    for steps in range(1, len(subset) + 1):
        following = next(w for w in neighbors[current] & members if w != previous)
        previous, current = current, following
        if current == subset[0]:
            return steps == len(subset)
    return False


def find_induced_even_cycle(g: Graph, max_len: Optional[int] = None) -> Optional[list[int]]:
    """
    Smallest induced even cycle of length in [4, max_len], lexicographically least
    within its size; None when there is none.

    Raises:
        InvalidSpecError: max_len odd, below 4 or above n
        DeskScaleExceededError: g has more nodes than verify.max_cycle_search_nodes
    """
    limit = get_settings().verify.max_cycle_search_nodes
    if max_len is None:
        max_len = g.n - g.n % 2
    if max_len % 2 or max_len < 4 or max_len > g.n:
        raise InvalidSpecError(f"max_len must be even with 4 <= max_len <= n = {g.n}, got {max_len}")
    if g.n > limit:
        count = sum(math.comb(g.n, k) for k in range(4, max_len + 1, 2))
        raise DeskScaleExceededError(f"induced cycle search limited to {limit} nodes, got {g.n}", count)

    neighbors = g.neighbors()
    for size in range(4, max_len + 1, 2):
        for subset in itertools.combinations(range(g.n), size):
            if _induces_cycle(neighbors, subset):
                return list(subset)
    return None


def _max_degree_even_cycle(g: Graph) -> tuple[Optional[list[int]], dict[str, Any]]:
    """
    Induced even cycle inside the subgraph induced by the max-degree nodes of g,
    as node labels of g. Returns (None, reason witness) when there is none.
    """
    _, _, d_max = degree_profile(g)
    top_nodes = [v for v, d in enumerate(g.degrees()) if d == d_max]
    if len(top_nodes) < 4:
        return None, {"reason": "fewer than 4 max-degree nodes"}
    try:
        cycle = find_induced_even_cycle(induced_subgraph(g, top_nodes))
    except DeskScaleExceededError as e:
        return None, {"reason": "premise search too large", "count": e.count}
    if cycle is None:
        return None, {"reason": "no induced even cycle among max-degree nodes"}
    return [top_nodes[i] for i in cycle], {}


def verify_even_cycle_bound(g: Graph, instance: Optional[str] = None) -> ClaimReport:
    """
    When the max-degree nodes induce a subgraph holding an induced even cycle,
    lambdaN >= d_max + 2. Otherwise SKIPPED.
    """
    _require_connected(g)
    label = instance or _describe(g)
    cycle, reason = _max_degree_even_cycle(g)
    if cycle is None:
        return _finish(ClaimId.L6, label, ClaimStatus.SKIPPED, reason)

    _, _, d_max = degree_profile(g)
    lambda_n = laplacian_spectrum(g).lambda_max
    bound = d_max + 2
    ok = lambda_n >= bound - _tol() * max(1.0, lambda_n)
    witness: dict[str, Any] = {
        "lambdaN": lambda_n,
        "d_max": d_max,
        "bound": bound,
        "cycle": cycle,
    }
    if not ok:
        witness["violation"] = bound - lambda_n
    return _finish(ClaimId.L6, label, _status(ok), witness)


def verify_even_cycle_pair_bound(g: Graph, instance: Optional[str] = None) -> ClaimReport:
    """
    Even-cycle premise on both g and its complement.

    The complement's max-degree nodes are the min-degree nodes of g, so the two
    premises give lambdaN(g) >= d_max + 2 and lambda2(g) = n - lambdaN(g^c) <= d_min - 1,
    hence r(g) <= (d_min - 1) / (d_max + 2). Any graph with 16 edges on 10 nodes has
    d_min <= 3 < d_max, which caps r at 1/3. SKIPPED unless both premises hold.
    """
    _require_connected(g)
    label = instance or _describe(g)
    cycle, reason = _max_degree_even_cycle(g)
    if cycle is None:
        return _finish(ClaimId.L6_PAIR, label, ClaimStatus.SKIPPED, {"side": "graph", **reason})
    complement_cycle, reason = _max_degree_even_cycle(complement(g))
    if complement_cycle is None:
        return _finish(ClaimId.L6_PAIR, label, ClaimStatus.SKIPPED, {"side": "complement", **reason})

    _, d_min, d_max = degree_profile(g)
    report = sync_report(g)
    bound = (d_min - 1) / (d_max + 2)
    ok = report.r <= bound + _tol()
    witness: dict[str, Any] = {
        "r": report.r,
        "bound": bound,
        "lambda2": report.lambda2,
        "lambdaN": report.lambda_n,
        "d_min": d_min,
        "d_max": d_max,
        "cycle": cycle,
        "complement_cycle": complement_cycle,
    }
    if not ok:
        witness["violation"] = report.r - bound
    return _finish(ClaimId.L6_PAIR, label, _status(ok), witness)


def _uniform(values: tuple[float, ...]) -> bool:
    return max(values) - min(values) <= 1e-9


def verify_betweenness_indicator(reference: Graph, candidate: Graph, instance: Optional[str] = None) -> ClaimReport:
    """
    A candidate whose nodes all carry the same betweenness, lower than the uniform
    betweenness of the reference, still synchronizes worse than the reference.
    SKIPPED when either betweenness is not uniform or the candidate's is not lower.
    """
    _require_connected(reference)
    _require_connected(candidate)
    label = instance or f"{_describe(candidate)} vs {_describe(reference)}"
    b_reference, b_candidate = betweenness(reference), betweenness(candidate)
    if not (_uniform(b_reference) and _uniform(b_candidate)):
        return _finish(ClaimId.BETWEENNESS, label, ClaimStatus.SKIPPED, {"reason": "betweenness not uniform"})
    if b_candidate[0] >= b_reference[0] - 1e-9:
        return _finish(
            ClaimId.BETWEENNESS,
            label,
            ClaimStatus.SKIPPED,
            {"reason": "candidate betweenness not lower", "betweenness_candidate": b_candidate[0]},
        )

    r_reference, candidate_report = sync_report(reference).r, sync_report(candidate)
    margin = r_reference - candidate_report.r
    ok = margin > get_settings().verify.strict_margin
    witness: dict[str, Any] = {
        "betweenness_reference": b_reference[0],
        "betweenness_candidate": b_candidate[0],
        "r_reference": r_reference,
        "r_candidate": candidate_report.r,
        "lambda2_candidate": candidate_report.lambda2,
        "lambdaN_candidate": candidate_report.lambda_n,
    }
    if not ok:
        witness["violation"] = -margin
    return _finish(ClaimId.BETWEENNESS, label, _status(ok), witness)


def check_circulant_betweenness_example() -> ClaimReport:
    """
    Rebuild the 20-edge, 10-node graph with lambda2 = 5 - sqrt(5), lambdaN = 5 + sqrt(5)
    and betweenness 5 at every node as a circulant, then compare it with the Petersen
    graph (15 edges, betweenness 6, r = 0.4).
    """
    root5 = math.sqrt(5.0)
    matches = circulant_spectral_matches(10, 20, 5.0 - root5, 5.0 + root5)
    if not matches:
        reason = {"reason": "no circulant match"}
        return _finish(ClaimId.BETWEENNESS, "circulant n=10 m=20", ClaimStatus.SKIPPED, reason)
    match = matches[0]
    return verify_betweenness_indicator(
        reference_graph("gamma1"), match.graph, instance=f"{match.describe()} vs gamma1"
    )


# Suites
@log_performance("verify")
def verify_cycle_theorem(n_values: Iterable[int]) -> list[ClaimReport]:
    """
    One chord never improves the eigenratio of a cycle.

    For every N and chord length L in 2..N//2 the chord (0, L) is added to C_N. N = 4
    must keep r unchanged within equality_tol; N >= 5 must lower r by more than
    strict_margin.
    """
    settings = get_settings().verify
    reports = []
    for N in n_values:
        if N < 4:
            raise InvalidSpecError(f"cycle theorem needs N >= 4, got {N}")
        cycle = generate(GeneratorSpec(kind=GeneratorKind.CYCLE, n=N))
        base = sync_report(cycle)

        for length in range(2, N // 2 + 1):
            chorded = sync_report(mutate_edge(cycle, 0, length, EdgeAction.ADD))
            margin = base.r - chorded.r
            if N == 4:
                ok = abs(margin) <= settings.equality_tol
            else:
                ok = margin > settings.strict_margin

            witness: dict[str, Any] = {
                "r_cycle": base.r,
                "r_chord": chorded.r,
                "lambda2_chord": chorded.lambda2,
                "lambdaN_chord": chorded.lambda_n,
                "margin": margin,
            }
            if not ok:
                witness["violation"] = margin
            reports.append(_finish(ClaimId.T1, f"N={N} chord=0-{length}", _status(ok), witness))
    return reports


def _sample_chunk(n: int, m: int, size: int, seed_seq: np.random.SeedSequence) -> tuple:
    """
    Draw `size` uniform connected labeled graphs with m edges.

    Returns (max_r, argmax pair indices, draws).
    """
    rng = np.random.default_rng(seed_seq)
    total_pairs = n * (n - 1) // 2
    collected, draws = 0, 0
    best_r, best_indices = -1.0, None

    while collected < size:
        batch = max(size - collected, 64)
        indices = np.argsort(rng.random((batch, total_pairs)), axis=1)[:, :m]
        draws += batch

        adjacency = adjacency_from_pair_indices(indices, n)
        keep = np.flatnonzero(connected_mask(adjacency))[: size - collected]
        if len(keep) == 0:
            continue
        collected += len(keep)

        _, _, ratios = eigenratios(adjacency[keep])
        top = int(np.argmax(ratios))
        if ratios[top] > best_r:
            best_r, best_indices = float(ratios[top]), indices[keep[top]].copy()

    return best_r, best_indices, draws


@log_performance("verify")
def sample_ratio_bound(
    n: int,
    m: int,
    samples: int,
    seed: int,
    bound: Optional[float] = None,
    workers: Optional[int] = None,
) -> ClaimReport:
    """
    Falsification check of an eigenratio bound by rejection sampling.

    Draws `samples` uniform random connected labeled graphs with n nodes and m edges
    and passes when the best observed r stays below bound - 1e-9. Sampling is chunked
    with one SeedSequence child per chunk, so the result is the same for any worker
    count. A pass means no counterexample was found, not that the bound is proven.

    Raises:
        InvalidSpecError: n < 2, m outside [n - 1, n(n-1)/2] or samples < 1
    """
    settings = get_settings()
    total_pairs = n * (n - 1) // 2
    if n < 2 or not n - 1 <= m <= total_pairs:
        raise InvalidSpecError(f"no connected graph with n = {n}, m = {m}")
    if samples < 1:
        raise InvalidSpecError(f"samples must be >= 1, got {samples}")

    bound = bound if bound is not None else settings.verify.ratio_bound
    workers = workers or settings.search.workers
    chunk = settings.search.sample_chunk
    sizes = [chunk] * (samples // chunk) + ([samples % chunk] if samples % chunk else [])
    children = np.random.SeedSequence(seed).spawn(len(sizes))

    op_logger = OperationLogger("verify", n=n, m=m, samples=samples, seed=seed)
    op_logger.info("sampling_started", chunks=len(sizes), workers=workers)

    results = fan_out(_sample_chunk, [(n, m, size, child) for size, child in zip(sizes, children)], workers)

    best_r, best_indices, draws = -1.0, None, 0
    for chunk_r, chunk_indices, chunk_draws in results:
        draws += chunk_draws
        if chunk_r > best_r:
            best_r, best_indices = chunk_r, chunk_indices

    best_graph = build_graph(n, edges_from_pair_indices(best_indices, n))
    recheck = sync_report(best_graph)
    ok = recheck.r < bound - 1e-9

    witness: dict[str, Any] = {
        "evidence": SAMPLING_EVIDENCE,
        "finding": "no counterexample found" if ok else "counterexample found",
        "samples": samples,
        "draws": draws,
        "max_r": recheck.r,
        "lambda2": recheck.lambda2,
        "lambdaN": recheck.lambda_n,
        "bound": bound,
        "argmax_edges": _edge_strings(best_graph.sorted_edges()),
    }
    if not ok:
        witness["violation"] = recheck.r
    op_logger.info("sampling_completed", max_r=recheck.r, draws=draws, passed=ok)
    return _finish(ClaimId.T2_SAMPLE, f"n={n} m={m} samples={samples} seed={seed}", _status(ok), witness)


def _check_instance(kind: str, g: Graph, edge: Optional[Edge], label: str) -> list[ClaimReport]:
    if kind == "monotonicity":
        return [verify_edge_monotonicity(g, edge, instance=label)]
    if kind == "degree_bounds":
        return [verify_degree_bounds(g, instance=label)]
    if kind == "complement":
        return [verify_complement_identities(g, instance=label)]
    if kind == "even_cycle":
        return [verify_even_cycle_bound(g, instance=label)]
    if kind == "even_cycle_pair":
        return [verify_even_cycle_pair_bound(g, instance=label)]
    if kind == "split_complement":
        return [verify_split_complement(g, instance=label)]

    # lambda2: every non-edge of a qualifying graph
    missing = non_edges(g)
    if not missing:
        return [_finish(ClaimId.L4, label, ClaimStatus.SKIPPED, {"reason": "complete graph"})]
    first = verify_lambda2_preservation(g, missing[0], instance=f"{label} edge={missing[0][0]}-{missing[0][1]}")
    if first.status == ClaimStatus.SKIPPED:
        return [first]
    return [first] + [
        verify_lambda2_preservation(g, e, instance=f"{label} edge={e[0]}-{e[1]}") for e in missing[1:]
    ]


def _suite_instance(kind: str, index: int, max_nodes: int, rng: np.random.Generator) -> tuple:
    """Draw one (graph, edge, label) for a suite."""
    if kind in ("complement", "split_complement"):
        n = int(rng.integers(2, max_nodes + 1))
        g = random_graph(n, float(rng.uniform(0.2, 0.9)), rng)
        if kind == "split_complement" and not is_connected(g):
            g = random_connected_graph(n, int(rng.integers(n - 1, n * (n - 1) // 2 + 1)), rng)
        return g, None, f"{kind}#{index} {_describe(g)}"

    if kind == "even_cycle_pair":
        # even draws: 16 edges on 10 nodes
        if index % 2 == 0 and max_nodes >= 10:
            g = random_connected_graph(10, 16, rng)
        else:
            n = int(rng.integers(4, max_nodes + 1))
            g = random_connected_graph(n, int(rng.integers(n - 1, min(2 * n, n * (n - 1) // 2) + 1)), rng)
        return g, None, f"{kind}#{index} {_describe(g)}"

    if kind == "even_cycle" and index % 2 == 1 and max_nodes >= 6:
        # regular graphs put every node at max degree
        n = int(rng.integers(3, max_nodes // 2 + 1)) * 2
        degree = int(rng.integers(2, min(n - 1, 4) + 1))
        G = nx.random_regular_graph(degree, n, seed=int(rng.integers(2**32)))
        g = from_networkx(G)
        if is_connected(g):
            return g, None, f"{kind}#{index} regular {_describe(g)}"

    n = int(rng.integers(3, max_nodes + 1))
    total = n * (n - 1) // 2
    g = random_connected_graph(n, int(rng.integers(n - 1, total)), rng)
    edge = None
    if kind == "monotonicity":
        missing = non_edges(g)
        edge = missing[int(rng.integers(len(missing)))]
    return g, edge, f"{kind}#{index} {_describe(g, edge)}"


@log_performance("verify")
def run_property_suite(
    kind: str,
    instances: int,
    max_nodes: int,
    seed: int,
    workers: Optional[int] = None,
) -> list[ClaimReport]:
    """
    Randomised suite over seeded graphs.

    Kinds: monotonicity, degree_bounds, lambda2, complement, even_cycle,
    even_cycle_pair, split_complement. Instances are drawn serially from one seeded
    generator and checked on the worker pool; reports come back in instance order.
    """
    if kind not in SUITE_KINDS:
        raise InvalidSpecError(f"unknown suite '{kind}'; known: {', '.join(SUITE_KINDS)}")
    if instances < 1 or max_nodes < 4:
        raise InvalidSpecError(f"suite needs instances >= 1 and max_nodes >= 4, got ({instances}, {max_nodes})")

    rng = np.random.default_rng(seed)
    tasks = [(kind, *_suite_instance(kind, i, max_nodes, rng)) for i in range(instances)]
    results = fan_out(_check_instance, tasks, workers or get_settings().search.workers)

    reports = [report for batch in results for report in batch]
    failures = sum(1 for report in reports if report.status == ClaimStatus.FAIL)
    logger.info("suite_completed", kind=kind, instances=instances, reports=len(reports), failures=failures)
    return reports


def write_claim_reports(reports: Iterable[ClaimReport], path: str | Path) -> Path:
    """Write one tab-separated line per report (LF endings)."""
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            for report in reports:
                f.write(report.to_line() + "\n")
    except OSError as e:
        raise ExportIOError(str(path), str(e)) from e
    return path
