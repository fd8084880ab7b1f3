from __future__ import annotations
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple


# ---------- errors ----------
class HypergraphError(ValueError):
    """Base class for every error raised by hyperseidel."""


class StructureError(HypergraphError):
    pass


class NotSymmetricError(StructureError):
    pass


class ParameterError(HypergraphError):
    pass


class ParseError(HypergraphError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class DimensionError(HypergraphError):
    pass


class ConvergenceError(HypergraphError):
    pass


class PoleError(HypergraphError):
    pass


class NotRegularError(HypergraphError):
    pass


# ---------- types ----------
class VertexLabel(NamedTuple):
    """Display label v_{i,j} of a generated vertex; `family` names the part it came from."""
    family: str
    i: int
    j: int

    def __str__(self) -> str:
        return f"{self.family}:v{self.i},{self.j}"


def check_structure(n: int, edges: Iterable[Sequence[int]], first: int = 0) -> Tuple[Tuple[int, ...], ...]:
    """Normalize edges to sorted tuples; reject bad indices, repeated vertices and edges of size < 2."""
    if n < 0:
        raise StructureError(f"vertex count must be >= 0, got {n}")
    out: List[Tuple[int, ...]] = []
    for idx, e in enumerate(edges, start=first):
        verts = tuple(sorted(int(v) for v in e))
        for v in verts:
            if v < 0 or v >= n:
                raise StructureError(f"vertex {v} in edge {idx} {list(e)} is out of range 0..{n - 1}")
        if len(set(verts)) != len(verts):
            raise StructureError(f"edge {idx} {list(e)} repeats a vertex")
        if len(verts) < 2:
            raise StructureError(f"edge {idx} {list(e)} has cardinality {len(verts)} < 2")
        out.append(verts)
    return tuple(out)


@dataclass(frozen=True)
class Hypergraph:
    """Vertices 0..n-1 and an ordered multiset of hyperedges."""
    n: int
    edges: Tuple[Tuple[int, ...], ...] = ()
    labels: Optional[Dict[int, VertexLabel]] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "edges", check_structure(self.n, self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self) -> List[int]:
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return deg

    def memberships(self) -> List[Tuple[int, ...]]:
        """Indices of the edges containing each vertex."""
        inc: List[List[int]] = [[] for _ in range(self.n)]
        for idx, e in enumerate(self.edges):
            for v in e:
                inc[v].append(idx)
        return [tuple(x) for x in inc]

    def label(self, v: int) -> str:
        if self.labels and v in self.labels:
            return str(self.labels[v])
        return f"v{v}"

    def relabeled(self, order: Sequence[int]) -> "Hypergraph":
        """Hypergraph whose vertex i is the old vertex order[i]."""
        if sorted(order) != list(range(self.n)):
            raise StructureError("relabeling order must be a permutation of 0..n-1")
        new_of = {old: new for new, old in enumerate(order)}
        labels = None
        if self.labels:
            labels = {new_of[v]: lab for v, lab in self.labels.items()}
        return Hypergraph(self.n, tuple(tuple(sorted(new_of[v] for v in e)) for e in self.edges), labels)


@dataclass(frozen=True)
class ValidationReport:
    rank: int
    corank: int
    uniform_k: Optional[int]
    regular_r: Optional[int]
    degrees: Tuple[int, ...]

    def describe(self) -> str:
        parts = [f"rank={self.rank}", f"corank={self.corank}"]
        parts.append(f"uniform k={self.uniform_k}" if self.uniform_k is not None else "non-uniform")
        parts.append(f"regular r={self.regular_r}" if self.regular_r is not None else "non-regular")
        return ", ".join(parts)


def validate(H: Hypergraph) -> ValidationReport:
    # re-check in case the caller bypassed the constructor
    check_structure(H.n, H.edges)
    sizes = [len(e) for e in H.edges]
    rank = max(sizes) if sizes else 0
    corank = min(sizes) if sizes else 0
    degrees = tuple(H.degrees())
    uniform_k = rank if sizes and rank == corank else None
    regular_r = degrees[0] if degrees and len(set(degrees)) == 1 else None
    return ValidationReport(rank=rank, corank=corank, uniform_k=uniform_k,
                            regular_r=regular_r, degrees=degrees)


def delete_vertex(H: Hypergraph, v: int) -> Hypergraph:
    """Remove v, reindex order-preservingly, drop edges that shrink below two vertices."""
    if v < 0 or v >= H.n:
        raise StructureError(f"vertex {v} out of range 0..{H.n - 1}")
    shift = lambda u: u - 1 if u > v else u
    edges = []
    for e in H.edges:
        rest = tuple(shift(u) for u in e if u != v)
        if len(rest) >= 2:
            edges.append(rest)
    labels = None
    if H.labels:
        labels = {shift(u): lab for u, lab in H.labels.items() if u != v}
    return Hypergraph(H.n - 1, tuple(edges), labels)


def delete_vertices(H: Hypergraph, vs: Iterable[int]) -> Hypergraph:
    """Delete several vertices given by their indices in H (not in the shrinking intermediates)."""
    for v in sorted(set(vs), reverse=True):
        H = delete_vertex(H, v)
    return H
