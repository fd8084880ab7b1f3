"""Exact integer matrices of a hypergraph: A, S = J - I - 2A, walk counts and Krylov ranks.

Everything here stays in integer arithmetic; object-dtype numpy arrays carry Python
ints wherever values can outgrow int64 (matrix powers, Krylov columns, determinants).
"""
from __future__ import annotations
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
import sympy as sym

from .hypergraph import DimensionError, Hypergraph, NotSymmetricError, ParseError, StructureError

_X = sym.Symbol("x")


@dataclass(frozen=True, eq=False)
class IntSymMatrix:
    entries: np.ndarray

    def __post_init__(self):
        M = np.asarray(self.entries)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise DimensionError(f"matrix must be square, got shape {M.shape}")
        if M.dtype == object:
            bad = [v for v in M.flat if not isinstance(v, (int, np.integer))]
            if bad:
                raise StructureError(f"matrix entries must be integers, got {bad[0]!r}")
        elif M.dtype.kind == "f":
            if not np.all(np.isfinite(M)) or not np.array_equal(M, np.round(M)):
                i, j = np.argwhere(~np.isfinite(M) | (M != np.round(M)))[0]
                raise StructureError(f"matrix entries must be integers, got {M[i, j]!r} at ({i}, {j})")
            M = M.astype(np.int64)
        elif M.dtype.kind in "iub":
            M = M.astype(np.int64)
        else:
            raise StructureError(f"matrix entries must be integers, got dtype {M.dtype}")
        if not np.array_equal(M, M.T):
            i, j = np.argwhere(M != M.T)[0]
            raise NotSymmetricError(f"matrix is not symmetric at ({i}, {j}): {M[i, j]} != {M[j, i]}")
        object.__setattr__(self, "entries", M)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def exact(self) -> np.ndarray:
        return self.entries.astype(object)

    def to_float(self) -> np.ndarray:
        return self.entries.astype(float)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntSymMatrix) and np.array_equal(self.entries, other.entries)

    def principal_submatrix(self, keep: Sequence[int]) -> "IntSymMatrix":
        idx = np.asarray(keep, dtype=int)
        return IntSymMatrix(self.entries[np.ix_(idx, idx)])


@dataclass(frozen=True)
class WalkTable:
    counts: Tuple[int, ...]

    def __getitem__(self, l: int) -> int:
        return self.counts[l]

    def __len__(self) -> int:
        return len(self.counts)


def adjacency_matrix(H: Hypergraph) -> IntSymMatrix:
    A = np.zeros((H.n, H.n), dtype=np.int64)
    for e in H.edges:
        idx = np.asarray(e, dtype=int)
        A[np.ix_(idx, idx)] += 1
    np.fill_diagonal(A, 0)
    return IntSymMatrix(A)


def seidel_matrix(H: Hypergraph) -> IntSymMatrix:
    n = H.n
    A = adjacency_matrix(H).entries
    return IntSymMatrix(np.ones((n, n), dtype=np.int64) - np.eye(n, dtype=np.int64) - 2 * A)


def seidel_apply(H: Hypergraph, x) -> np.ndarray:
    """S x from edge-local sums: (Sx)_v = x(V - v) - 2 * sum over edges e containing v of x(e - v).

    Integer input is promoted to Python ints, so the result is exact.
    """
    x = np.asarray(x)
    if x.shape != (H.n,):
        raise DimensionError(f"vector has shape {x.shape}, expected ({H.n},)")
    if x.dtype.kind in "iub":
        x = x.astype(object)
    total = x.sum() if H.n else 0
    out = total - x
    for e in H.edges:
        idx = np.asarray(e, dtype=int)
        xe = x[idx].sum()
        out[idx] = out[idx] - 2 * (xe - x[idx])
    return out


def walk_table(H: Hypergraph, L: int) -> WalkTable:
    """N_0..N_L, the entry sums of A^l, by repeated exact products A (A^{l-1} j)."""
    if L < 0:
        raise DimensionError(f"walk length must be >= 0, got {L}")
    A = adjacency_matrix(H).exact()
    v = np.ones(H.n, dtype=object)
    counts = [int(v.sum()) if H.n else 0]
    for _ in range(L):
        v = A.dot(v) if H.n else v
        counts.append(int(v.sum()) if H.n else 0)
    return WalkTable(tuple(counts))


def walk_count(H: Hypergraph, l: int) -> int:
    return walk_table(H, l)[l]


def krylov_walk_matrix(M: IntSymMatrix) -> np.ndarray:
    """Columns j, Mj, ..., M^{n-1} j in exact integers."""
    n = M.n
    K = np.zeros((n, n), dtype=object)
    if n == 0:
        return K
    E = M.exact()
    col = np.ones(n, dtype=object)
    for c in range(n):
        K[:, c] = col
        col = E.dot(col)
    return K


def exact_rank(K) -> int:
    """Rank over the rationals."""
    K = np.asarray(K, dtype=object)
    if K.size == 0:
        return 0
    return int(sym.Matrix([[int(v) for v in row] for row in K]).rank())


def char_poly_coeffs(M) -> List[int]:
    """Exact det(xI - M) coefficients, leading first."""
    E = np.asarray(M.entries if isinstance(M, IntSymMatrix) else M, dtype=object)
    if E.shape[0] == 0:
        return [1]
    P = sym.Matrix([[int(v) for v in row] for row in E]).charpoly(_X)
    return [int(c) for c in P.all_coeffs()]


# ---------- dump format ----------
MATRIX_HEADER = "# matrix:"


def format_matrix_dump(M: IntSymMatrix, kind: str = "") -> str:
    lines = [f"{MATRIX_HEADER} {kind}".rstrip(), str(M.n)]
    lines.extend(" ".join(str(int(v)) for v in row) for row in M.entries)
    return "\n".join(lines) + "\n"


def parse_matrix_dump(text: str) -> IntSymMatrix:
    rows = []
    n = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            values = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"expected integers, got {line!r}", lineno) from None
        if n is None:
            if len(values) != 1 or values[0] < 0:
                raise ParseError(f"first line must be a single matrix order, got {line!r}", lineno)
            n = values[0]
            continue
        if len(values) != n:
            raise ParseError(f"row has {len(values)} entries, expected {n}", lineno)
        rows.append(values)
    if n is None:
        raise ParseError("empty matrix dump", 1)
    if len(rows) != n:
        raise ParseError(f"expected {n} rows, got {len(rows)}")
    return IntSymMatrix(np.array(rows, dtype=np.int64).reshape(n, n))


def is_matrix_dump(text: str) -> bool:
    return any(line.strip().startswith(MATRIX_HEADER) for line in text.splitlines()[:5])


def write_matrix_dump(M: IntSymMatrix, path: str, kind: str = "") -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(format_matrix_dump(M, kind))


def read_matrix_dump(path: str) -> IntSymMatrix:
    with open(path, "r", encoding="utf-8") as f:
        return parse_matrix_dump(f.read())
