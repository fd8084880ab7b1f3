from __future__ import annotations
import logging
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple

import numpy as np
import sympy as sym
from scipy.linalg import eigvals, matrix_balance

logger = logging.getLogger(__name__)

_X = sym.Symbol("x")


def horner(coeffs: Sequence[int], x: float) -> Tuple[float, float]:
    """p(x) and p'(x) for coefficients listed leading first."""
    p = 0.0
    dp = 0.0
    for c in coeffs:
        dp = dp * x + p
        p = p * x + float(c)
    return p, dp


def companion(coeffs: Sequence[int]) -> np.ndarray:
    c = np.asarray([float(v) for v in coeffs])
    c = c / c[0]
    n = len(c) - 1
    C = np.zeros((n, n))
    C[0, :] = -c[1:]
    if n > 1:
        C[np.arange(1, n), np.arange(n - 1)] = 1.0
    return C


def newton_polish(coeffs: Sequence, x: float, steps: int = 8) -> float:
    fx, _ = horner(coeffs, x)
    for _ in range(steps):
        if fx == 0.0:
            break
        _, d = horner(coeffs, x)
        if d == 0.0:
            break
        nx = x - fx / d
        fn, _ = horner(coeffs, nx)
        if abs(fn) >= abs(fx):
            break
        x, fx = nx, fn
    return x


def squarefree_parts(coeffs: Sequence[int]) -> List[Tuple[List[Fraction], int]]:
    """[(f_i, i)] with p = c * prod f_i^i, each f_i monic and squarefree, ordered by i."""
    coeffs = [int(c) for c in coeffs]
    while len(coeffs) > 1 and coeffs[0] == 0:
        coeffs = coeffs[1:]
    if len(coeffs) <= 1:
        return []
    _, factors = sym.Poly(coeffs, _X).sqf_list()
    out = []
    for f, mult in sorted(factors, key=lambda fm: fm[1]):
        if f.degree() < 1:
            continue
        monic = f.monic()
        out.append(([Fraction(int(c.p), int(c.q)) for c in monic.all_coeffs()], int(mult)))
    return out


def _simple_real_roots(p: List[Fraction]) -> List[float]:
    deg = len(p) - 1
    if deg == 1:
        return [float(-p[1] / p[0])]
    fl = [float(c) for c in p]
    balanced, _ = matrix_balance(companion(fl))
    raw = eigvals(balanced)
    scale = 1.0 + np.abs(raw).max()
    if np.abs(raw.imag).max() > 1e-6 * scale:
        logger.warning("polynomial %s has roots with imaginary parts up to %.3e; keeping real parts",
                       [str(c) for c in p], np.abs(raw.imag).max())
    return [newton_polish(p, float(r.real)) for r in raw]


@lru_cache(maxsize=4096)
def real_roots(coeffs: Tuple[int, ...]) -> Tuple[float, ...]:
    """Real roots with multiplicity, descending, of an integer polynomial known to have only real roots.

    Repeated roots are split off exactly first, so every factor handed to the balanced
    companion matrix has simple roots and Newton steps converge quadratically.
    """
    coeffs = tuple(int(c) for c in coeffs)
    while len(coeffs) > 1 and coeffs[0] == 0:
        coeffs = coeffs[1:]
    if len(coeffs) <= 1:
        return ()
    roots: List[float] = []
    for factor, mult in squarefree_parts(coeffs):
        roots.extend(r for r in _simple_real_roots(factor) for _ in range(mult))
    return tuple(sorted(roots, reverse=True))
