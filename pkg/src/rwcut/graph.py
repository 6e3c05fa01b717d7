"""Weighted undirected graph container plus cut/volume/conductance metrics.

The graph is stored in CSR form (index pointer, neighbor and weight arrays)
with dense 0..n-1 vertex ids.  Parallel edges are merged at construction by
summing weights; self-loops are rejected (walk laziness is a property of the
walk engine, never of the stored graph).  Instances are immutable after
construction and safe to share across threads.

Volumes follow the lazy-walk convention used throughout the package:
``vol(S)`` is the plain weighted-degree sum and ``2 * vol(S)`` is the lazy
volume that accounts for the virtual self-loop of weight ``d_i`` at every
vertex.
"""

from __future__ import annotations

import io
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, ParseError

EVEN = 1
ODD = -1
UNCLASSIFIED = 0


@dataclass(frozen=True)
class CutMetrics:
    """Edge-weight totals for a disjoint vertex pair (A, B).

    good: weight of edges with one endpoint in A and the other in B.
    cross: weight of edges with exactly one endpoint in A | B.
    inc: weight of edges incident on A | B.
    """

    good: float
    cross: float
    inc: float

    @property
    def cut(self) -> float:
        return self.good + self.cross / 2.0


class WeightedGraph:
    """Immutable weighted undirected graph with a degree index."""

    __slots__ = (
        "n",
        "indptr",
        "nbr",
        "wt",
        "degrees",
        "total_weight",
        "max_degree",
        "_gcum",
        "_row_base",
        "_csr",
    )

    def __init__(self, n: int, indptr, nbr, wt):
        self.n = int(n)
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.nbr = np.asarray(nbr, dtype=np.int64)
        self.wt = np.asarray(wt, dtype=np.float64)
        # Per-vertex prefix sums, globally offset so one sorted array serves
        # every row during neighbor sampling.
        gcum = np.cumsum(self.wt)
        self._gcum = gcum
        shifted = np.concatenate(([0.0], gcum))
        self.degrees = shifted[self.indptr[1:]] - shifted[self.indptr[:-1]]
        self.total_weight = float(self.degrees.sum())
        self.max_degree = float(self.degrees.max()) if self.n else 0.0
        self._row_base = shifted[self.indptr[:-1]] if self.n else shifted[:0]
        self._csr = None

    # -- construction ------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int, float]]) -> "WeightedGraph":
        """Build a graph from (u, v, w) triples, merging parallel edges."""
        merged: dict[tuple[int, int], float] = {}
        for u, v, w in edges:
            u = int(u)
            v = int(v)
            w = float(w)
            if u == v:
                raise ParseError(f"self-loop at vertex {u} not allowed")
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"vertex id out of range: ({u}, {v}) with n={n}")
            if not (w > 0.0) or not np.isfinite(w):
                raise ParseError(f"edge ({u}, {v}) has non-positive weight {w}")
            key = (u, v) if u < v else (v, u)
            merged[key] = merged.get(key, 0.0) + w
        rows: list[list[tuple[int, float]]] = [[] for _ in range(n)]
        for (u, v), w in merged.items():
            rows[u].append((v, w))
            rows[v].append((u, w))
        indptr = np.zeros(n + 1, dtype=np.int64)
        nbr: list[int] = []
        wt: list[float] = []
        for v in range(n):
            rows[v].sort()
            indptr[v + 1] = indptr[v] + len(rows[v])
            for u, w in rows[v]:
                nbr.append(u)
                wt.append(w)
        return cls(n, indptr, np.array(nbr, dtype=np.int64), np.array(wt))

    # -- basic access ------------------------------------------------------

    def neighbors(self, v: int) -> tuple[np.ndarray, np.ndarray]:
        """Neighbor ids and weights of v as array views."""
        lo, hi = self.indptr[v], self.indptr[v + 1]
        return self.nbr[lo:hi], self.wt[lo:hi]

    def edges(self):
        """Yield each undirected edge once as (u, v, w) with u < v."""
        for u in range(self.n):
            nb, wt = self.neighbors(u)
            for v, w in zip(nb.tolist(), wt.tolist()):
                if u < v:
                    yield u, v, w

    def edge_weight_total(self) -> float:
        """Sum of edge weights (half the total weighted degree)."""
        return self.total_weight / 2.0

    def volume(self, vertices) -> float:
        """Weighted-degree sum over a vertex collection."""
        idx = _as_index_array(vertices, self.n)
        return float(self.degrees[idx].sum())

    def adjacency_csr(self):
        """Adjacency matrix as a cached scipy CSR array."""
        if self._csr is None:
            from scipy.sparse import csr_array

            self._csr = csr_array(
                (self.wt, self.nbr, self.indptr), shape=(self.n, self.n)
            )
        return self._csr

    def induced(self, vertices) -> tuple["WeightedGraph", np.ndarray]:
        """Induced subgraph plus the new-id -> old-id map."""
        ids = np.unique(_as_index_array(vertices, self.n))
        pos = np.full(self.n, -1, dtype=np.int64)
        pos[ids] = np.arange(ids.size)
        edges = []
        for new_u, old_u in enumerate(ids.tolist()):
            nb, wt = self.neighbors(old_u)
            for old_v, w in zip(nb.tolist(), wt.tolist()):
                if old_u < old_v and pos[old_v] >= 0:
                    edges.append((new_u, pos[old_v], w))
        return WeightedGraph.from_edges(ids.size, edges), ids

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.nbr, other.nbr)
            and np.array_equal(self.wt, other.wt)
        )

    def __hash__(self):
        return id(self)

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, edges={self.nbr.size // 2}, m={self.total_weight:g})"


def _as_index_array(vertices, n: int) -> np.ndarray:
    if isinstance(vertices, np.ndarray):
        idx = vertices.astype(np.int64, copy=False)
    else:
        idx = np.fromiter((int(v) for v in vertices), dtype=np.int64)
    if idx.size and (idx.min() < 0 or idx.max() >= n):
        raise InvalidInputError("vertex id out of range")
    return idx


# -- I/O --------------------------------------------------------------------


def load_graph(source) -> WeightedGraph:
    """Parse an edge-list stream or path into a WeightedGraph.

    Format: one edge per line, ``u v [w]`` (w defaults to 1.0), '#' starts a
    comment, blank lines are ignored, ids are 0-based.  Parallel edges merge
    by weight summation.  Self-loops and non-positive weights are rejected.
    """
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    edges: list[tuple[int, int, float]] = []
    max_id = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise ParseError(f"line {lineno}: expected 'u v [w]', got {raw!r}")
        try:
            u = int(parts[0])
            v = int(parts[1])
            w = float(parts[2]) if len(parts) == 3 else 1.0
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
        if u < 0 or v < 0:
            raise ParseError(f"line {lineno}: negative vertex id")
        if u == v:
            raise ParseError(f"line {lineno}: self-loop {u}-{v} (laziness is implicit)")
        if not (w > 0.0):
            raise ParseError(f"line {lineno}: non-positive weight {w}")
        max_id = max(max_id, u, v)
        edges.append((u, v, w))
    return WeightedGraph.from_edges(max_id + 1, edges)


def dump_graph(g: WeightedGraph, target) -> None:
    """Write the edge list with sorted edges; round-trips through load_graph."""
    own = False
    if hasattr(target, "write"):
        fh = target
    else:
        fh = open(target, "w", encoding="utf-8")
        own = True
    try:
        for u, v, w in g.edges():
            fh.write(f"{u} {v} {w!r}\n")
    finally:
        if own:
            fh.close()


def dumps_graph(g: WeightedGraph) -> str:
    buf = io.StringIO()
    dump_graph(g, buf)
    return buf.getvalue()


def write_partition(left, n: int, target) -> None:
    """Partition file: one ``vertex_id L|R`` line per vertex."""
    left_set = set(int(v) for v in left)
    own = False
    if hasattr(target, "write"):
        fh = target
    else:
        fh = open(target, "w", encoding="utf-8")
        own = True
    try:
        for v in range(n):
            fh.write(f"{v} {'L' if v in left_set else 'R'}\n")
    finally:
        if own:
            fh.close()


def read_partition(source) -> frozenset[int]:
    """Read a partition file back into the set of Left vertices."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    left = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or parts[1] not in ("L", "R"):
            raise ParseError(f"line {lineno}: expected 'vertex L|R'")
        if parts[1] == "L":
            left.add(int(parts[0]))
    return frozenset(left)


# -- metrics ----------------------------------------------------------------


def cut_metrics(g: WeightedGraph, A, B) -> CutMetrics:
    """good/cross/inc totals for disjoint vertex sets A and B."""
    a = set(int(v) for v in A)
    b = set(int(v) for v in B)
    if a & b:
        raise InvalidInputError("A and B must be disjoint")
    if any(not (0 <= v < g.n) for v in a | b):
        raise InvalidInputError("vertex id out of range")
    side = np.zeros(g.n, dtype=np.int8)
    for v in a:
        side[v] = EVEN
    for v in b:
        side[v] = ODD
    good = cross = inc = 0.0
    for v in a | b:
        sv = side[v]
        nb, wt = g.neighbors(v)
        su = side[nb]
        unclassified = su == UNCLASSIFIED
        cross += float(wt[unclassified].sum())
        inc += float(wt[unclassified].sum()) + float(wt[~unclassified].sum()) / 2.0
        good += float(wt[su == -sv].sum()) / 2.0
    return CutMetrics(good=good, cross=cross, inc=inc)


def conductance(g: WeightedGraph, S) -> float:
    """Crossing weight of (S, V-S) over the smaller lazy volume.

    The lazy volume 2*vol accounts for the walk's virtual self-loops.
    """
    idx = _as_index_array(S, g.n)
    if idx.size == 0 or np.unique(idx).size == g.n:
        raise InvalidInputError("S must be a nonempty proper subset")
    inside = np.zeros(g.n, dtype=bool)
    inside[idx] = True
    crossing = 0.0
    for v in idx.tolist():
        nb, wt = g.neighbors(v)
        crossing += float(wt[~inside[nb]].sum())
    vol_s = 2.0 * float(g.degrees[inside].sum())
    vol_rest = 2.0 * g.total_weight - vol_s
    denom = min(vol_s, vol_rest)
    if denom <= 0.0:
        return 0.0
    return crossing / denom


def cut_value(g: WeightedGraph, left) -> float:
    """Fraction of total edge weight crossing (left, complement)."""
    if g.total_weight == 0.0:
        return 0.0
    idx = _as_index_array(left, g.n)
    inside = np.zeros(g.n, dtype=bool)
    inside[idx] = True
    crossing = 0.0
    for v in np.nonzero(inside)[0].tolist():
        nb, wt = g.neighbors(v)
        crossing += float(wt[~inside[nb]].sum())
    return crossing / g.edge_weight_total()


def sample_vertex_by_degree(g: WeightedGraph, rng: np.random.Generator) -> int:
    """Sample a vertex with probability proportional to its weighted degree."""
    if g.total_weight <= 0.0:
        raise InvalidInputError("graph has no edges to sample from")
    cum = np.cumsum(g.degrees)
    r = rng.random() * g.total_weight
    v = int(np.searchsorted(cum, r, side="right"))
    return min(v, g.n - 1)


# -- tripartition -----------------------------------------------------------


class Tripartition:
    """Evolving Even/Odd/Unclassified labelling with incremental cut metrics.

    A vertex, once classified, may never change side; attempts raise
    InvalidInputError.  good/cross/inc are maintained in O(deg) per
    classification.
    """

    __slots__ = ("graph", "side", "good", "cross", "inc", "classified_volume",
                 "classified_count")

    def __init__(self, graph: WeightedGraph):
        self.graph = graph
        self.side = np.zeros(graph.n, dtype=np.int8)
        self.good = 0.0
        self.cross = 0.0
        self.inc = 0.0
        self.classified_volume = 0.0
        self.classified_count = 0

    def side_of(self, v: int) -> int:
        return int(self.side[v])

    def classify(self, v: int, side: int) -> None:
        if side not in (EVEN, ODD):
            raise InvalidInputError(f"side must be EVEN or ODD, got {side}")
        if self.side[v] != UNCLASSIFIED:
            raise InvalidInputError(f"vertex {v} already classified")
        g = self.graph
        nb, wt = g.neighbors(v)
        su = self.side[nb]
        unclassified = su == UNCLASSIFIED
        w_un = float(wt[unclassified].sum())
        w_cl = float(wt[~unclassified].sum())
        self.inc += w_un
        self.cross += w_un - w_cl
        self.good += float(wt[su == -side].sum())
        self.side[v] = side
        self.classified_volume += float(g.degrees[v])
        self.classified_count += 1

    @property
    def cut(self) -> float:
        return self.good + self.cross / 2.0

    def metrics(self) -> CutMetrics:
        return CutMetrics(good=self.good, cross=self.cross, inc=self.inc)

    def even_vertices(self) -> np.ndarray:
        return np.nonzero(self.side == EVEN)[0]

    def odd_vertices(self) -> np.ndarray:
        return np.nonzero(self.side == ODD)[0]

    def unclassified_vertices(self) -> np.ndarray:
        return np.nonzero(self.side == UNCLASSIFIED)[0]
