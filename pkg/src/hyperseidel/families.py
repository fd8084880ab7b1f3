"""Generators for the hypergraph families studied here, plus their canonical equitable partitions.

Vertex layout of each family is block-contiguous so that canonical partitions are
ranges of indices:
  hyperstar         [center | leaves of edge 1 | ... | leaves of edge n-1]
  double hyperstar  [center 1 | star-1 leaves | center 2 | star-2 leaves | bridge fill]
  sunflower         [core vertex | petal 1 (anchor first) | ... | petal k-1]
"""
from __future__ import annotations
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .hypergraph import Hypergraph, ParameterError, StructureError, VertexLabel


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ParameterError(msg)


def gen_hyperstar(n: int, k: int) -> Hypergraph:
    _require(n >= 2 and k >= 2, f"hyperstar needs n >= 2 and k >= 2, got n={n}, k={k}")
    labels: Dict[int, VertexLabel] = {0: VertexLabel("hyperstar", 0, 0)}
    edges = []
    idx = 1
    for i in range(1, n):
        e = [0]
        for j in range(1, k):
            labels[idx] = VertexLabel("hyperstar", i, j)
            e.append(idx)
            idx += 1
        edges.append(tuple(e))
    return Hypergraph(idx, tuple(edges), labels)


def gen_double_hyperstar(n1: int, n2: int, k: int) -> Hypergraph:
    _require(n1 >= 2 and n2 >= 2 and k >= 3,
             f"double hyperstar needs n1, n2 >= 2 and k >= 3, got n1={n1}, n2={n2}, k={k}")
    labels: Dict[int, VertexLabel] = {}
    edges: List[Tuple[int, ...]] = []
    idx = 0
    centers = []
    for part, size in (("star1", n1), ("star2", n2)):
        c = idx
        centers.append(c)
        labels[c] = VertexLabel(part, 0, 0)
        idx += 1
        for i in range(1, size):
            e = [c]
            for j in range(1, k):
                labels[idx] = VertexLabel(part, i, j)
                e.append(idx)
                idx += 1
            edges.append(tuple(e))
    bridge = list(centers)
    for j in range(1, k - 1):
        labels[idx] = VertexLabel("bridge", 0, j)
        bridge.append(idx)
        idx += 1
    edges.append(tuple(bridge))
    return Hypergraph(idx, tuple(edges), labels)


def gen_sunflower(k: int) -> Hypergraph:
    _require(k >= 2, f"sunflower needs k >= 2, got k={k}")
    labels: Dict[int, VertexLabel] = {0: VertexLabel("sunflower", 0, 0)}
    edges = []
    anchors = [0]
    idx = 1
    for i in range(1, k):
        petal = []
        for j in range(1, k + 1):
            labels[idx] = VertexLabel("sunflower", i, j)
            petal.append(idx)
            idx += 1
        anchors.append(petal[0])
        edges.append(tuple(petal))
    edges.append(tuple(anchors))
    return Hypergraph(idx, tuple(edges), labels)


def gen_complete_uniform(n: int, r: int) -> Hypergraph:
    _require(2 <= r <= n, f"complete uniform hypergraph needs 2 <= r <= n, got n={n}, r={r}")
    return Hypergraph(n, tuple(combinations(range(n), r)))


def gen_power(base_edges: Sequence[Tuple[int, int]], base_n: int, k: int) -> Hypergraph:
    """k-th power of a graph: every edge gets k-2 fresh vertices, numbered after the base vertices."""
    _require(k >= 2, f"power needs k >= 2, got k={k}")
    edges = []
    idx = base_n
    for pos, pair in enumerate(base_edges):
        a, b = (int(x) for x in pair)
        if a == b or not (0 <= a < base_n and 0 <= b < base_n):
            raise StructureError(f"base edge {pos} {tuple(pair)} is not a pair over 0..{base_n - 1}")
        fill = list(range(idx, idx + k - 2))
        idx += k - 2
        edges.append(tuple([a, b] + fill))
    return Hypergraph(idx, tuple(edges))


def star_edges(n: int) -> List[Tuple[int, int]]:
    return [(0, i) for i in range(1, n)]


def double_star_edges(n1: int, n2: int) -> List[Tuple[int, int]]:
    """Double star S_{n1,n2}: centers 0 and n1, bridge edge listed last."""
    c2 = n1
    return [(0, i) for i in range(1, n1)] + [(c2, c2 + j) for j in range(1, n2)] + [(0, c2)]


def edge_major_order(H: Hypergraph) -> List[int]:
    """Vertices in order of first appearance when edges are scanned in order; isolated vertices last."""
    seen: List[int] = []
    mark = set()
    for e in H.edges:
        for v in e:
            if v not in mark:
                mark.add(v)
                seen.append(v)
    seen.extend(v for v in range(H.n) if v not in mark)
    return seen


def random_hypergraph(n: int, m: int, rng: np.random.Generator, max_edge: Optional[int] = None) -> Hypergraph:
    """m random edges over n >= 2 vertices with sizes in 2..max_edge (duplicates allowed)."""
    _require(n >= 2, f"random hypergraph needs n >= 2, got {n}")
    top = min(max_edge or n, n)
    edges = []
    for _ in range(m):
        size = int(rng.integers(2, top + 1))
        edges.append(tuple(sorted(int(v) for v in rng.choice(n, size=size, replace=False))))
    return Hypergraph(n, tuple(edges))


def worked_example() -> Hypergraph:
    """Five vertices, edges {v1,v2,v3}, {v2,v3,v4,v5}, {v1,v2,v4} (0-based here)."""
    return Hypergraph(5, ((0, 1, 2), (1, 2, 3, 4), (0, 1, 3)))


# ---------- canonical partitions ----------
def hyperstar_blocks(n: int, k: int) -> List[List[int]]:
    order = (n - 1) * (k - 1) + 1
    return [[0], list(range(1, order))]


def sunflower_blocks(k: int) -> List[List[int]]:
    anchors = [1 + (i - 1) * k for i in range(1, k)]
    outer = [1 + (i - 1) * k + j for i in range(1, k) for j in range(1, k)]
    return [[0], anchors, outer]


def double_hyperstar_blocks(n1: int, n2: int, k: int) -> List[List[int]]:
    leaves1 = (n1 - 1) * (k - 1)
    leaves2 = (n2 - 1) * (k - 1)
    c2 = 1 + leaves1
    fill0 = c2 + 1 + leaves2
    return [
        [0],
        list(range(1, c2)),
        [c2],
        list(range(c2 + 1, fill0)),
        list(range(fill0, fill0 + k - 2)),
    ]


FAMILIES = {
    "hyperstar": (("n", "k"), gen_hyperstar, hyperstar_blocks),
    "double-hyperstar": (("n1", "n2", "k"), gen_double_hyperstar, double_hyperstar_blocks),
    "sunflower": (("k",), gen_sunflower, sunflower_blocks),
    "complete": (("n", "r"), gen_complete_uniform, None),
}
