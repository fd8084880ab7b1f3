from __future__ import annotations
import logging
import math
import warnings
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.linalg import LinAlgWarning, lu_factor

from .hypergraph import DimensionError, Hypergraph, PoleError
from .jacobi import jacobi_eigh
from .matrices import IntSymMatrix, adjacency_matrix, exact_rank, krylov_walk_matrix, seidel_matrix

logger = logging.getLogger(__name__)

GROUP_TOL = 1e-7
MAIN_TOL = 1e-6


def _as_array(M) -> np.ndarray:
    if isinstance(M, IntSymMatrix):
        return M.to_float()
    return np.asarray(M, dtype=float)


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    values: np.ndarray      # descending
    vectors: np.ndarray     # column i belongs to values[i]
    residual: float
    sweeps: int = 0

    @property
    def n(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class Spectrum:
    pairs: Tuple[Tuple[float, int], ...]
    tol: float

    @property
    def order(self) -> int:
        return sum(m for _, m in self.pairs)

    def expanded(self) -> np.ndarray:
        return np.array([v for v, m in self.pairs for _ in range(m)], dtype=float)

    def multiplicity_at(self, value: float, tol: Optional[float] = None) -> int:
        tol = self.tol if tol is None else tol
        return sum(m for v, m in self.pairs if abs(v - value) <= tol)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.pairs, columns=["value", "multiplicity"])


def eigen_symmetric(M, tol: float = 1e-12, max_sweeps: int = 100) -> EigenDecomposition:
    A = _as_array(M)
    vals, vecs, sweeps = jacobi_eigh(A, tol=tol, max_sweeps=max_sweeps)
    n = len(vals)
    # descending; ties broken on the rounded eigenvector for reproducible output
    order = sorted(range(n), key=lambda i: (-round(vals[i], 10), tuple(np.round(vecs[:, i], 10))))
    vals = vals[order]
    vecs = vecs[:, order]
    residual = float(np.abs(A.dot(vecs) - vecs * vals).max()) if n else 0.0
    return EigenDecomposition(values=vals, vectors=vecs, residual=residual, sweeps=sweeps)


def eigenvalues(M) -> np.ndarray:
    return eigen_symmetric(M).values


def _group_indices(values: Sequence[float], tol: float) -> List[List[int]]:
    groups: List[List[int]] = []
    mean = 0.0
    for i, v in enumerate(values):
        if groups and abs(v - mean) <= tol:
            groups[-1].append(i)
            mean += (v - mean) / len(groups[-1])
        else:
            groups.append([i])
            mean = float(v)
    return groups


def group_spectrum(values: Sequence[float], tol: float = GROUP_TOL) -> Spectrum:
    """Greedy clustering of descending values; a value joins the running group within tol of its mean."""
    if tol <= 0:
        raise ValueError("grouping tolerance must be > 0")
    vals = [float(v) for v in values]
    pairs = tuple((float(np.mean([vals[i] for i in g])), len(g)) for g in _group_indices(vals, tol))
    return Spectrum(pairs=pairs, tol=tol)


def matrix_spectrum(M, tol: float = GROUP_TOL) -> Spectrum:
    return group_spectrum(eigen_symmetric(M).values, tol)


def char_poly_eval(M, lam: float) -> float:
    """det(lam I - M) from an LU factorization with partial pivoting."""
    A = _as_array(M)
    n = A.shape[0]
    if A.ndim != 2 or n != A.shape[1]:
        raise DimensionError(f"matrix must be square, got shape {A.shape}")
    if n == 0:
        return 1.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LinAlgWarning)
        lu, piv = lu_factor(lam * np.eye(n) - A, check_finite=False)
    swaps = int(np.count_nonzero(piv != np.arange(n)))
    det = float(np.prod(np.diag(lu)))
    return -det if swaps % 2 else det


def energy(values: Sequence[float]) -> float:
    return float(np.abs(np.asarray(values, dtype=float)).sum())


def seidel_energy(H: Hypergraph) -> float:
    if H.n == 0:
        return 0.0
    return energy(eigenvalues(seidel_matrix(H)))


def adjacency_energy(H: Hypergraph) -> float:
    if H.n == 0:
        return 0.0
    return energy(eigenvalues(adjacency_matrix(H)))


@dataclass(frozen=True)
class MainEigenvalue:
    value: float
    multiplicity: int
    is_main: bool
    projection: float


def main_eigenvalues(M, tol: float = MAIN_TOL, group_tol: float = GROUP_TOL,
                     decomposition: Optional[EigenDecomposition] = None) -> List[MainEigenvalue]:
    """Flag each eigenvalue group whose eigenspace carries a component of the all-ones vector."""
    D = decomposition or eigen_symmetric(M)
    n = D.n
    j = np.ones(n)
    out = []
    for g in _group_indices(D.values, group_tol):
        X = D.vectors[:, g]
        proj = float(math.sqrt(float((X.T.dot(j) ** 2).sum())))
        out.append(MainEigenvalue(
            value=float(D.values[g].mean()),
            multiplicity=len(g),
            is_main=proj > tol * math.sqrt(n),
            projection=proj,
        ))
    return out


def main_count_via_rank(M: IntSymMatrix) -> int:
    return exact_rank(krylov_walk_matrix(M))


def check_interlacing(parent_values: Sequence[float], child_values: Sequence[float], slack: float = 1e-9) -> bool:
    """lambda_i >= mu_i >= lambda_{n-m+i} for descending parent lambda (n) and child mu (m)."""
    lam = np.asarray(parent_values, dtype=float)
    mu = np.asarray(child_values, dtype=float)
    n, m = len(lam), len(mu)
    if m > n:
        raise DimensionError(f"child has {m} values, parent only {n}")
    for i in range(m):
        if mu[i] > lam[i] + slack or mu[i] < lam[n - m + i] - slack:
            return False
    return True


@dataclass(frozen=True, eq=False)
class WalkGenEval:
    """H(t) = sum_j C_j / (1 - t lambda_j) with C_j = (sum_i x_ij)^2."""
    values: np.ndarray
    C: np.ndarray
    pole_tol: float = 1e-12
    weight_floor: float = 1e-12

    def __call__(self, t: float) -> float:
        denom = 1.0 - t * self.values
        live = self.C > self.weight_floor
        if np.any(live & (np.abs(denom) < self.pole_tol)):
            raise PoleError(f"t={t} is within {self.pole_tol} of a pole of the walk generating function")
        return float((self.C[live] / denom[live]).sum())

    def walks(self, l: int) -> float:
        return float((self.C * self.values ** l).sum())

    def main_values(self) -> np.ndarray:
        return self.values[self.C > self.weight_floor]


def walk_gen_from_spectrum(D: EigenDecomposition) -> WalkGenEval:
    C = D.vectors.sum(axis=0) ** 2 if D.n else np.zeros(0)
    return WalkGenEval(values=np.asarray(D.values, dtype=float), C=np.asarray(C, dtype=float))


def sorted_difference(a: Sequence[float], b: Sequence[float]) -> float:
    """Largest gap between two value multisets after sorted matching."""
    x = np.sort(np.asarray(a, dtype=float))
    y = np.sort(np.asarray(b, dtype=float))
    if len(x) != len(y):
        raise DimensionError(f"cannot match {len(x)} values against {len(y)}")
    return float(np.abs(x - y).max()) if len(x) else 0.0
