from __future__ import annotations
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .hypergraph import Hypergraph, NotRegularError, StructureError, validate
from .matrices import IntSymMatrix, adjacency_matrix, seidel_matrix
from .spectra import (
    GROUP_TOL,
    _group_indices,
    char_poly_eval,
    eigen_symmetric,
    group_spectrum,
    walk_gen_from_spectrum,
)

logger = logging.getLogger(__name__)


# ---------- partitions ----------
@dataclass(frozen=True)
class Partition:
    blocks: Tuple[Tuple[int, ...], ...]
    block_of: Tuple[int, ...]

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence[int]], n: int) -> "Partition":
        block_of = [-1] * n
        for b, block in enumerate(blocks):
            if not block:
                raise StructureError(f"block {b} is empty")
            for v in block:
                if not 0 <= v < n:
                    raise StructureError(f"vertex {v} in block {b} out of range 0..{n - 1}")
                if block_of[v] != -1:
                    raise StructureError(f"vertex {v} is in blocks {block_of[v]} and {b}")
                block_of[v] = b
        missing = [v for v, b in enumerate(block_of) if b == -1]
        if missing:
            raise StructureError(f"vertices {missing} are not covered by any block")
        return cls(tuple(tuple(b) for b in blocks), tuple(block_of))

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls.from_blocks([[v] for v in range(n)], n)

    @property
    def sizes(self) -> List[int]:
        return [len(b) for b in self.blocks]


def twin_classes(H: Hypergraph) -> Partition:
    """Vertices grouped by identical edge-membership sets, in order of first vertex."""
    by_key: Dict[Tuple[int, ...], List[int]] = {}
    for v, mem in enumerate(H.memberships()):
        by_key.setdefault(mem, []).append(v)
    return Partition.from_blocks(list(by_key.values()), H.n)


@dataclass(frozen=True, eq=False)
class QuotientResult:
    Q: np.ndarray                  # object array: ints when equitable, Fractions otherwise
    equitable: bool
    sizes: Tuple[int, ...]
    witness: Optional[Dict[str, Any]] = None

    def as_float(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.Q], dtype=float).reshape(self.Q.shape)

    def as_int(self) -> np.ndarray:
        if not self.equitable:
            raise StructureError("quotient of a non-equitable partition has no integer form")
        return self.Q

    def symmetrized(self) -> np.ndarray:
        """D^{1/2} Q D^{-1/2} with D the block sizes; symmetric for equitable partitions of symmetric M."""
        d = np.sqrt(np.asarray(self.sizes, dtype=float))
        return self.as_float() * d[:, None] / d[None, :]


def quotient_matrix(M: IntSymMatrix, P: Partition) -> QuotientResult:
    E = M.entries.astype(object) if isinstance(M, IntSymMatrix) else np.asarray(M, dtype=object)
    if len(P.block_of) != E.shape[0]:
        raise StructureError(f"partition covers {len(P.block_of)} vertices, matrix has {E.shape[0]}")
    m = len(P.blocks)
    Q = np.zeros((m, m), dtype=object)
    equitable = True
    witness = None
    for i, bi in enumerate(P.blocks):
        for j, bj in enumerate(P.blocks):
            sums = [int(sum(E[u, w] for w in bj)) for u in bi]
            if len(set(sums)) == 1:
                Q[i, j] = sums[0]
                continue
            Q[i, j] = Fraction(sum(sums), len(sums))
            if witness is None:
                a = 0
                b = next(t for t in range(len(sums)) if sums[t] != sums[0])
                witness = {"blocks": (i, j), "rows": (bi[a], bi[b]), "sums": (sums[a], sums[b])}
            equitable = False
    return QuotientResult(Q=Q, equitable=equitable, sizes=tuple(P.sizes), witness=witness)


def quotient_eigenvalues(Q, sizes: Optional[Sequence[int]]) -> np.ndarray:
    Qf = np.asarray(Q, dtype=float)
    if sizes is not None:
        d = np.sqrt(np.asarray(sizes, dtype=float))
        Qs = Qf * d[:, None] / d[None, :]
        if np.allclose(Qs, Qs.T, atol=1e-9):
            return eigen_symmetric(Qs).values
    return np.sort(np.linalg.eigvals(Qf).real)[::-1]


def spectrum_containment(Q, M, tol: float = 1e-8, sizes: Optional[Sequence[int]] = None) -> bool:
    """Every eigenvalue of Q matches a distinct eigenvalue of M within tol."""
    q_vals = quotient_eigenvalues(Q.as_float() if isinstance(Q, QuotientResult) else Q,
                              sizes if sizes is not None else (Q.sizes if isinstance(Q, QuotientResult) else None))
    m_vals = list(eigen_symmetric(M).values)
    used = [False] * len(m_vals)
    for q in sorted(q_vals, reverse=True):
        hit = next((i for i, v in enumerate(m_vals) if not used[i] and abs(v - q) <= tol), None)
        if hit is None:
            return False
        used[hit] = True
    return True


# ---------- verifier reports ----------
@dataclass
class CheckReport:
    check: str
    hypergraph: str
    passed: bool
    max_rel_error: Optional[float] = None
    violations: Optional[int] = None
    points_used: Optional[int] = None
    skipped: bool = False
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        out = {"hypergraph": self.hypergraph, "check": self.check, "passed": self.passed}
        if self.max_rel_error is not None:
            out["max_rel_error"] = self.max_rel_error
        if self.violations is not None:
            out["violations"] = self.violations
        if self.points_used is not None:
            out["points_used"] = self.points_used
        if self.skipped:
            out["skipped"] = True
        if self.details:
            out["details"] = self.details
        return out


def sample_points(seed: int, count: int = 20, low: float = -10.0, high: float = 10.0) -> List[float]:
    rng = np.random.default_rng(seed)
    return [float(x) for x in rng.uniform(low, high, size=count)]


def _rel_error(lhs: float, rhs: float) -> float:
    scale = max(abs(lhs), abs(rhs))
    return 0.0 if scale == 0.0 else abs(lhs - rhs) / scale


def verify_char_poly_identity(H: Hypergraph, points: Sequence[float], threshold: float = 1e-6,
                              pole_tol: float = 1e-8, name: str = "") -> CheckReport:
    """P_S(x) = (-2)^n P_A(-(x+1)/2) (1 - H(-2/(x+1)) / (x+1)) at each sample x."""
    A = adjacency_matrix(H)
    S = seidel_matrix(H)
    walks = walk_gen_from_spectrum(eigen_symmetric(A))
    poles = [-1.0] + [-1.0 - 2.0 * lam for lam in walks.main_values()]
    errors = []
    skipped = []
    for x in points:
        if any(abs(x - p) < pole_tol for p in poles):
            logger.info("identity sample %.6g skipped: within %.1e of a pole", x, pole_tol)
            skipped.append(x)
            continue
        lhs = char_poly_eval(S, x)
        t = -2.0 / (x + 1.0)
        rhs = (-2.0) ** H.n * char_poly_eval(A, -(x + 1.0) / 2.0) * (-walks(t) / (x + 1.0) + 1.0)
        errors.append(_rel_error(lhs, rhs))
    worst = max(errors) if errors else 0.0
    return CheckReport("identity", name or f"H(n={H.n})", worst < threshold, max_rel_error=worst,
                       points_used=len(errors), details={"skipped_points": skipped})


def verify_regular_identity(H: Hypergraph, n: int, k: int, r: int, points: Sequence[float],
                            threshold: float = 1e-8, pole_tol: float = 1e-8, name: str = "") -> CheckReport:
    """P_S(x) = (-2)^n (x - n + 1 + 2r(k-1)) / (x + 1 + 2r(k-1)) P_A(-(x+1)/2) for (k, r)-regular H."""
    rep = validate(H)
    if H.n != n or rep.uniform_k != k or rep.regular_r != r:
        raise NotRegularError(f"hypergraph is not ({k},{r})-regular on {n} vertices "
                              f"(uniform_k={rep.uniform_k}, regular_r={rep.regular_r}, n={H.n})")
    A = adjacency_matrix(H)
    S = seidel_matrix(H)
    perron = r * (k - 1)
    errors = []
    skipped = []
    for x in points:
        if abs(x + 1 + 2 * perron) < pole_tol:
            skipped.append(x)
            continue
        lhs = char_poly_eval(S, x)
        rhs = (-2.0) ** n * (x - n + 1 + 2 * perron) / (x + 1 + 2 * perron) * char_poly_eval(A, -(x + 1.0) / 2.0)
        errors.append(_rel_error(lhs, rhs))
    worst = max(errors) if errors else 0.0
    return CheckReport("regular-identity", name or f"H(n={H.n})", worst < threshold, max_rel_error=worst,
                       points_used=len(errors), details={"skipped_points": skipped})


def verify_multiplicity_transfer(H: Hypergraph, tol: float = GROUP_TOL, name: str = "") -> CheckReport:
    """Each adjacency eigenvalue l0 of multiplicity m_p >= 2 leaves -2 l0 - 1 in S with multiplicity >= m_p - 1."""
    adj = group_spectrum(eigen_symmetric(adjacency_matrix(H)).values, tol)
    sei = group_spectrum(eigen_symmetric(seidel_matrix(H)).values, tol)
    triples = []
    violations = 0
    for lam0, m_p in adj.pairs:
        if m_p < 2:
            continue
        m_q = sei.multiplicity_at(-2.0 * lam0 - 1.0, tol * 10)
        ok = m_q >= m_p - 1
        violations += 0 if ok else 1
        if not ok:
            logger.warning("multiplicity transfer fails on %s: lambda0=%.9g m_p=%d m_q=%d", name, lam0, m_p, m_q)
        triples.append({"lambda0": lam0, "m_p": m_p, "m_q": m_q, "ok": ok})
    return CheckReport("multiplicity", name or f"H(n={H.n})", violations == 0,
                       violations=violations, details={"triples": triples})


def twin_eigenvector_check(H: Hypergraph, tol: float = 1e-8, group_tol: float = GROUP_TOL,
                           name: str = "") -> CheckReport:
    """Twins u, v agree (x_u = x_v) on every Seidel eigenvector whose eigenvalue has l + 1 != 2 d(u),
    and every eigenspace projector commutes with each twin transposition."""
    S = seidel_matrix(H)
    D = eigen_symmetric(S)
    deg = H.degrees()
    classes = [b for b in twin_classes(H).blocks if len(b) > 1]
    worst_entry = 0.0
    worst_commute = 0.0
    for g in _group_indices(D.values, group_tol):
        lam = float(D.values[g].mean())
        X = D.vectors[:, g]
        E = X.dot(X.T)
        for block in classes:
            u = block[0]
            split = abs(lam + 1.0 - 2.0 * deg[u]) <= 10 * group_tol
            for v in block[1:]:
                if not split:
                    worst_entry = max(worst_entry, float(np.abs(X[u, :] - X[v, :]).max()))
                perm = list(range(H.n))
                perm[u], perm[v] = v, u
                worst_commute = max(worst_commute, float(np.abs(E[np.ix_(perm, perm)] - E).max()))
    passed = worst_entry <= tol and worst_commute <= tol
    return CheckReport("twins", name or f"H(n={H.n})", passed, max_rel_error=max(worst_entry, worst_commute),
                       details={"twin_classes": len(classes), "max_entry_gap": worst_entry,
                                "max_commutator": worst_commute})
