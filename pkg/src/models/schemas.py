"""
Data Models and Schemas

Pydantic models for graphs, spectra, claim reports, trajectories and search results.
"""

import math
from enum import Enum
from typing import Any, Literal, Optional

import networkx as nx
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

Edge = tuple[int, int]

RATIO_EPS = 1e-12


class GeneratorKind(str, Enum):
    """Enum for graph generator families."""

    CYCLE = "cycle"
    PATH = "path"
    COMPLETE = "complete"
    COMPLETE_BIPARTITE = "complete_bipartite"
    PETERSEN = "petersen"
    BARABASI_ALBERT = "barabasi_albert"
    STAR = "star"
    REFERENCE = "reference"


class EdgeAction(str, Enum):
    ADD = "add"
    REMOVE = "remove"


class ClaimId(str, Enum):
    """Enum for checked claims."""

    L1 = "L1"  # eigenvalues never decrease under edge addition
    L2 = "L2"  # degree bounds on lambdaN and lambda2
    L4 = "L4"  # repeated lambda2 survives one edge addition
    L5 = "L5"  # complement identities
    L6 = "L6"  # induced even cycle among max-degree nodes lifts lambdaN
    T1 = "T1"  # one chord never helps a cycle
    T2_SAMPLE = "T2_SAMPLE"  # sampled ratio bound, 16 edges on 10 nodes
    SPLIT_COMPL = "SPLIT_COMPL"  # complement with q >= 2 components gives r in closed form
    L6_PAIR = "L6_PAIR"  # even cycles on both sides cap r at (d_min - 1) / (d_max + 2)
    BETWEENNESS = "BETWEENNESS"  # uniformly lower betweenness without better r


class ClaimStatus(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    SKIPPED = "SKIPPED"


class StrategyKind(str, Enum):
    """Enum for edge-adding strategies."""

    DEGREE_HOMOGENEOUS = "degree_homogeneous"
    RANDOM = "random"


class Subcommand(str, Enum):
    SPECTRUM = "spectrum"
    RATIO = "ratio"
    COMPLEMENT = "complement"
    METRICS = "metrics"
    VERIFY = "verify"
    TRAJECTORY = "trajectory"
    SCAN = "scan"
    ANNEAL = "anneal"


GRAPH_SUBCOMMANDS = frozenset(
    {Subcommand.SPECTRUM, Subcommand.RATIO, Subcommand.COMPLEMENT, Subcommand.METRICS, Subcommand.TRAJECTORY}
)


# Graph Models
class Graph(BaseModel):
    """
    Simple undirected labeled graph.

    Nodes are 0..n-1; every edge is stored once as (u, v) with u < v. Instances are
    immutable; mutation helpers in graph_core return new graphs.
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1)
    edges: frozenset[Edge] = frozenset()

    @model_validator(mode="after")
    def validate_edges(self):
        for u, v in self.edges:
            if not 0 <= u < v < self.n:
                raise ValueError(f"edge ({u}, {v}) must satisfy 0 <= u < v < n = {self.n}")
        return self

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def neighbors(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def adjacency_matrix(self) -> np.ndarray:
        A = np.zeros((self.n, self.n))
        for u, v in self.edges:
            A[u, v] = A[v, u] = 1.0
        return A

    def laplacian_matrix(self) -> np.ndarray:
        """L = D - A."""
        A = self.adjacency_matrix()
        return np.diag(A.sum(axis=1)) - A

    def to_networkx(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(range(self.n))
        G.add_edges_from(self.sorted_edges())
        return G


class GeneratorSpec(BaseModel):
    """Generator family plus its integer parameters."""

    model_config = ConfigDict(frozen=True)

    kind: GeneratorKind
    n: Optional[int] = None
    p: Optional[int] = None
    q: Optional[int] = None
    m_attach: Optional[int] = None
    seed: Optional[int] = None
    name: Optional[str] = None

    def describe(self) -> str:
        """Canonical generator string, e.g. 'cycle:6', 'kbip:2:3', 'ba:50:2:12345'."""
        if self.kind == GeneratorKind.PETERSEN:
            return "petersen"
        if self.kind == GeneratorKind.COMPLETE_BIPARTITE:
            return f"kbip:{self.p}:{self.q}"
        if self.kind == GeneratorKind.BARABASI_ALBERT:
            return f"ba:{self.n}:{self.m_attach}:{self.seed}"
        if self.kind == GeneratorKind.REFERENCE:
            return f"ref:{self.name}"
        return f"{self.kind.value}:{self.n}"


# Spectral Models
class Spectrum(BaseModel):
    """Full Laplacian eigenvalue list, sorted ascending."""

    model_config = ConfigDict(frozen=True)

    values: tuple[float, ...] = Field(..., min_length=1)
    tol: float = Field(1e-9, gt=0)

    @field_validator("values")
    @classmethod
    def validate_sorted(cls, v):
        if any(a > b for a, b in zip(v, v[1:])):
            raise ValueError("spectrum values must be sorted ascending")
        return v

    @model_validator(mode="after")
    def validate_nonnegative(self):
        scale = max(1.0, abs(self.values[-1]))
        if self.values[0] < -self.tol * scale * len(self.values):
            raise ValueError(f"Laplacian spectrum has negative value {self.values[0]}")
        return self

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def lambda2(self) -> float:
        return self.values[1]

    @property
    def lambda_max(self) -> float:
        return self.values[-1]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values)


class SyncReport(BaseModel):
    """Eigenratio verdict for one connected graph."""

    model_config = ConfigDict(frozen=True)

    lambda2: float = Field(..., gt=0)
    lambda_n: float = Field(..., gt=0)
    r: float = Field(..., gt=0, le=1)
    mult2: int = Field(..., ge=1)
    mult_n: int = Field(..., ge=1)

    @model_validator(mode="after")
    def validate_ratio(self):
        expected = min(1.0, self.lambda2 / self.lambda_n)
        if abs(self.r - expected) > RATIO_EPS:
            raise ValueError(f"r = {self.r} does not equal lambda2 / lambdaN = {expected}")
        return self


class MetricReport(BaseModel):
    """Structural characteristics compared against synchronizability."""

    model_config = ConfigDict(frozen=True)

    betweenness: tuple[float, ...]
    avg_distance: float = Field(..., ge=0)
    diameter: int = Field(..., ge=0)
    degree_variance: float = Field(..., ge=0)
    clustering: float = Field(..., ge=0, le=1)

    @field_validator("betweenness")
    @classmethod
    def validate_betweenness(cls, v):
        if any(b < 0 for b in v):
            raise ValueError("betweenness values must be non-negative")
        return v


# Verification Models
def _format_witness_value(value: Any) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return f"{value:.12g}"
    if isinstance(value, (list, tuple)):
        return ",".join(_format_witness_value(item) for item in value)
    return str(value)


class ClaimReport(BaseModel):
    """Pass/fail record for one checked claim instance."""

    model_config = ConfigDict(frozen=True)

    claim_id: ClaimId
    instance: str = Field(..., min_length=1)
    status: ClaimStatus
    witness: dict[str, Any] = Field(default_factory=dict)

    @field_validator("instance")
    @classmethod
    def validate_instance(cls, v):
        if "\t" in v or "\n" in v:
            raise ValueError("instance description must be a single tab-free line")
        return v

    @model_validator(mode="after")
    def validate_failure_witness(self):
        if self.status == ClaimStatus.FAIL and "violation" not in self.witness:
            raise ValueError("a failing claim report must carry the violating quantity in witness['violation']")
        return self

    @property
    def passed(self) -> bool:
        """True for PASS and SKIPPED."""
        return self.status != ClaimStatus.FAIL

    def to_line(self) -> str:
        witness = "; ".join(f"{key}={_format_witness_value(value)}" for key, value in self.witness.items())
        return f"{self.claim_id.value}\t{self.instance}\t{self.status.value}\t{witness}"


# Experiment Models
class StrategySpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: StrategyKind
    seed: int = Field(..., ge=0, lt=2**64)


class TrajectoryPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    m_add: int = Field(..., ge=0)
    r: float = Field(..., gt=0, le=1)
    lambda2: float = Field(..., gt=0)
    lambda_n: float = Field(..., gt=0)


class Trajectory(BaseModel):
    """Eigenratio after each edge addition; point 0 is the seed graph."""

    model_config = ConfigDict(frozen=True)

    points: tuple[TrajectoryPoint, ...] = Field(..., min_length=1)
    seed_graph_desc: str
    strategy: StrategySpec

    @field_validator("points")
    @classmethod
    def validate_m_add(cls, v):
        if v[0].m_add != 0:
            raise ValueError("trajectory must start at m_add = 0")
        if any(b.m_add <= a.m_add for a, b in zip(v, v[1:])):
            raise ValueError("m_add must be strictly increasing")
        return v

    def ratios(self) -> list[float]:
        return [point.r for point in self.points]


class TrajectoryJob(BaseModel):
    """One independent trajectory run for batch execution."""

    model_config = ConfigDict(frozen=True)

    seed_graph: Graph
    seed_graph_desc: str
    strategy: StrategySpec
    steps: int = Field(..., ge=0)


# Search Models
class BestRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    m: int = Field(..., ge=0)
    max_r: float = Field(..., gt=0, le=1)
    lambda2: float = Field(..., gt=0)
    lambda_n: float = Field(..., gt=0)
    argmax_edges: tuple[Edge, ...]
    n_connected_graphs: int = Field(..., ge=1)

    @model_validator(mode="after")
    def validate_argmax(self):
        if len(self.argmax_edges) != self.m:
            raise ValueError(f"argmax has {len(self.argmax_edges)} edges, expected {self.m}")
        return self


class BestTable(BaseModel):
    """Exact maximum eigenratio per edge count over all connected labeled graphs."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=2)
    rows: tuple[BestRow, ...] = Field(..., min_length=1)

    @model_validator(mode="after")
    def validate_rows(self):
        full = self.n * (self.n - 1) // 2
        ms = [row.m for row in self.rows]
        if ms[0] < self.n - 1 or ms[-1] > full:
            raise ValueError(f"rows must lie within m in [{self.n - 1}, {full}]")
        if any(b != a + 1 for a, b in zip(ms, ms[1:])):
            raise ValueError("rows must cover consecutive edge counts")
        if ms[-1] == full and not math.isclose(self.rows[-1].max_r, 1.0, abs_tol=1e-9):
            raise ValueError("the complete graph row must have max_r = 1")
        return self

    def row(self, m: int) -> BestRow:
        for row in self.rows:
            if row.m == m:
                return row
        raise KeyError(m)


class CirculantMatch(BaseModel):
    """A circulant graph whose extreme Laplacian eigenvalues match a target pair."""

    model_config = ConfigDict(frozen=True)

    graph: Graph
    jumps: tuple[int, ...] = Field(..., min_length=1)
    report: SyncReport
    betweenness: tuple[float, ...]

    @model_validator(mode="after")
    def validate_betweenness(self):
        if len(self.betweenness) != self.graph.n:
            raise ValueError("one betweenness value per node required")
        return self

    def describe(self) -> str:
        return f"C{self.graph.n}({','.join(str(j) for j in self.jumps)})"


class EdgeCountComparison(BaseModel):
    """Best achievable r at m edges against m + 1 edges."""

    model_config = ConfigDict(frozen=True)

    m: int
    max_r: float
    next_max_r: float
    verdict: Literal["decrease", "equal", "increase"]

    def to_line(self) -> str:
        return f"m={self.m}->{self.m + 1} max_r={self.max_r:.12g} next_max_r={self.next_max_r:.12g} {self.verdict}"


class AnnealSchedule(BaseModel):
    model_config = ConfigDict(frozen=True)

    t0: float = Field(0.1, gt=0)
    cooling: float = Field(0.999, gt=0, le=1)
    iterations: int = Field(100_000, ge=0)
    restarts: int = Field(8, ge=1)

    def describe(self) -> str:
        return f"T0={self.t0:g} cooling={self.cooling:g} iters={self.iterations} restarts={self.restarts}"


class AnnealResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=2)
    m: int = Field(..., ge=1)
    best_graph: Graph
    best_r: float = Field(..., gt=0, le=1)
    schedule_desc: str
    evaluations: int = Field(..., ge=0)

    @model_validator(mode="after")
    def validate_best_graph(self):
        if self.best_graph.n != self.n or self.best_graph.m != self.m:
            raise ValueError("best graph does not have the requested node and edge counts")
        if not nx.is_connected(self.best_graph.to_networkx()):
            raise ValueError("best graph must be connected")
        return self


# CLI Models
class CommandInvocation(BaseModel):
    """One parsed command-line call."""

    subcommand: Subcommand
    graph_source: Optional[str] = None
    options: dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def validate_graph_source(self):
        if self.subcommand in GRAPH_SUBCOMMANDS and not self.graph_source:
            raise ValueError(f"'{self.subcommand.value}' needs exactly one graph source")
        if self.subcommand in (Subcommand.SCAN, Subcommand.ANNEAL) and self.graph_source:
            raise ValueError(f"'{self.subcommand.value}' does not take a graph source")
        return self
