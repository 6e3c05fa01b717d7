"""Exact and baseline oracles plus planted-instance generation."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParamsError, ResourceError
from .graph import WeightedGraph, cut_value

BRUTE_FORCE_MAX_N = 22
_MASK_CHUNK = 1 << 14


@dataclass(frozen=True)
class PlantedInstance:
    graph: WeightedGraph
    left: frozenset
    planted_value: float
    target_eps: float
    seed: int

    def metadata(self) -> dict:
        return {
            "n": self.graph.n,
            "target_eps": self.target_eps,
            "seed": self.seed,
            "planted_value": self.planted_value,
            "planted_left": sorted(self.left),
        }

    def dump_metadata(self, target) -> None:
        text = json.dumps(self.metadata(), sort_keys=True, indent=0)
        if hasattr(target, "write"):
            target.write(text + "\n")
        else:
            with open(target, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")


def brute_force_maxcut(g: WeightedGraph) -> tuple[float, frozenset]:
    """Exact optimum by enumeration with vertex 0 pinned to the left side."""
    if g.n > BRUTE_FORCE_MAX_N:
        raise ResourceError(f"brute force limited to n <= {BRUTE_FORCE_MAX_N}")
    if g.n == 0 or g.total_weight == 0.0:
        return 0.0, frozenset(range(g.n))
    us, vs, ws = [], [], []
    for u, v, w in g.edges():
        us.append(u)
        vs.append(v)
        ws.append(w)
    eu = np.array(us, dtype=np.int64)
    ev = np.array(vs, dtype=np.int64)
    ew = np.array(ws)
    total = g.edge_weight_total()
    n_free = g.n - 1
    best_w = -1.0
    best_mask = 0
    for lo in range(0, 1 << n_free, _MASK_CHUNK):
        hi = min(lo + _MASK_CHUNK, 1 << n_free)
        masks = np.arange(lo, hi, dtype=np.int64)
        # bit k of mask holds the side of vertex k+1; vertex 0 is pinned
        bu = np.where(eu == 0, 0, (masks[:, None] >> np.maximum(eu - 1, 0)) & 1)
        bv = (masks[:, None] >> (ev - 1)) & 1
        cutw = ((bu != bv) * ew).sum(axis=1)
        i = int(np.argmax(cutw))
        if cutw[i] > best_w:
            best_w = float(cutw[i])
            best_mask = int(masks[i])
    left = {0} | {v for v in range(1, g.n) if not (best_mask >> (v - 1)) & 1}
    return best_w / total, frozenset(left)


def greedy_cut(g: WeightedGraph) -> frozenset:
    """Majority-vote greedy placement in descending-degree order.

    Each vertex goes to the side that cuts more weight against its already
    placed neighbors (ties to Left), which guarantees at least half of the
    total edge weight is cut.
    """
    order = np.lexsort((np.arange(g.n), -g.degrees))
    side = np.zeros(g.n, dtype=np.int8)
    for v in order.tolist():
        nb, wt = g.neighbors(v)
        sv = side[nb]
        to_left = float(wt[sv == -1].sum())   # cut weight if v goes left
        to_right = float(wt[sv == 1].sum())
        side[v] = 1 if to_left >= to_right else -1
    return frozenset(int(v) for v in np.nonzero(side == 1)[0])


def random_cut(g: WeightedGraph, rng: np.random.Generator) -> frozenset:
    """Independent fair-coin side assignment."""
    coins = rng.random(g.n) < 0.5
    return frozenset(int(v) for v in np.nonzero(coins)[0])


def gen_planted(
    n: int, target_eps: float, avg_degree: float, seed: int
) -> PlantedInstance:
    """Random instance planted around a known bipartition.

    Half the vertices are assigned to each side; edges are sampled with
    endpoints crossing the planted cut with probability 1 - target_eps and
    falling inside one side otherwise, resampling duplicates, until
    n * avg_degree / 2 distinct unit-weight edges exist.
    """
    if n < 4 or n % 2 != 0:
        raise InvalidParamsError("n must be even and at least 4")
    if not (0.0 <= target_eps < 0.5):
        raise InvalidParamsError("target_eps must be in [0, 0.5)")
    if avg_degree < 1.0:
        raise InvalidParamsError("avg_degree must be at least 1")
    target_edges = int(round(n * avg_degree / 2.0))
    max_cross = (n // 2) ** 2
    max_within = 2 * (n // 2) * (n // 2 - 1) // 2
    if target_edges > max_cross + max_within:
        raise InvalidParamsError("too many edges requested for this n")
    rng = np.random.default_rng(np.random.SeedSequence(entropy=(seed, 0xB1A5)))
    perm = rng.permutation(n)
    left = perm[: n // 2]
    right = perm[n // 2:]
    edges: set[tuple[int, int]] = set()
    while len(edges) < target_edges:
        if rng.random() < 1.0 - target_eps:
            u = int(left[rng.integers(left.size)])
            v = int(right[rng.integers(right.size)])
        else:
            pool = left if rng.random() < 0.5 else right
            u = int(pool[rng.integers(pool.size)])
            v = int(pool[rng.integers(pool.size)])
            if u == v:
                continue
        key = (u, v) if u < v else (v, u)
        edges.add(key)
    graph = WeightedGraph.from_edges(n, [(u, v, 1.0) for u, v in sorted(edges)])
    left_set = frozenset(int(v) for v in left)
    value = cut_value(graph, left_set)
    return PlantedInstance(
        graph=graph,
        left=left_set,
        planted_value=value,
        target_eps=float(target_eps),
        seed=int(seed),
    )
