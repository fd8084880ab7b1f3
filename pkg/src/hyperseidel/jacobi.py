from __future__ import annotations
import logging
import math
from typing import Tuple

import numpy as np

from .hypergraph import ConvergenceError, DimensionError, NotSymmetricError

logger = logging.getLogger(__name__)


def jacobi_eigh(M, tol: float = 1e-12, max_sweeps: int = 100) -> Tuple[np.ndarray, np.ndarray, int]:
    """Cyclic Jacobi rotations on a real symmetric matrix.

    Stops once every off-diagonal magnitude is below tol * (1 + max|M|).
    Returns (diagonal eigenvalues, eigenvector columns, sweeps used); unsorted.
    """
    A = np.array(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionError(f"matrix must be square, got shape {A.shape}")
    if not np.allclose(A, A.T, rtol=0.0, atol=1e-12 * (1.0 + (np.abs(A).max() if A.size else 0.0))):
        raise NotSymmetricError("jacobi_eigh needs a symmetric matrix")
    A = 0.5 * (A + A.T)
    n = A.shape[0]
    V = np.eye(n)
    if n < 2:
        return np.diag(A).copy(), V, 0
    threshold = tol * (1.0 + np.abs(A).max())
    off_mask = ~np.eye(n, dtype=bool)

    for sweep in range(max_sweeps + 1):
        off = np.abs(A[off_mask]).max()
        if off < threshold:
            logger.debug("jacobi converged n=%d sweeps=%d off=%.3e", n, sweep, off)
            return np.diag(A).copy(), V, sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) < threshold:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c

                cp = A[:, p].copy()
                cq = A[:, q].copy()
                A[:, p] = c * cp - s * cq
                A[:, q] = s * cp + c * cq
                rp = A[p, :].copy()
                rq = A[q, :].copy()
                A[p, :] = c * rp - s * rq
                A[q, :] = s * rp + c * rq
                A[p, q] = A[q, p] = 0.0

                vp = V[:, p].copy()
                vq = V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq

    raise ConvergenceError(f"jacobi did not converge in {max_sweeps} sweeps (off-diagonal {off:.3e})")
