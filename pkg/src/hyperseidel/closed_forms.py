"""Closed-form spectra, energies and characteristic polynomials of the studied families.

Each function returns symbolic descriptors (see models.py); evaluation to floats is
lazy so the exact parts (rational values, surd conjugates, integer polynomials) stay
available to tests.
"""
from __future__ import annotations
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np
from scipy.special import comb

from .families import double_hyperstar_blocks, gen_double_hyperstar, gen_sunflower, sunflower_blocks
from .hypergraph import NotRegularError, ParameterError
from .matrices import adjacency_matrix, char_poly_coeffs, seidel_matrix
from .models import (
    ClosedFormSpectrum,
    Rational,
    Surd,
    TrigCubicRoot,
    descriptors,
    poly_roots,
)
from .structure import Partition, quotient_matrix

logger = logging.getLogger(__name__)


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ParameterError(msg)


def _quadratic_roots(b: int, c0: int) -> Tuple[Surd, Surd]:
    """Roots of x^2 - b x - c0, larger first."""
    d = b * b + 4 * c0
    return Surd(b, 1, d, 2), Surd(b, -1, d, 2)


# ---------- hyperstar ----------
def _hyperstar_bounds(n: int, k: int) -> None:
    _require(n >= 3 and k >= 2, f"hyperstar closed forms need n >= 3 and k >= 2, got n={n}, k={k}")


def hyperstar_order(n: int, k: int) -> int:
    return (n - 1) * (k - 1) + 1


def hyperstar_adjacency(n: int, k: int) -> ClosedFormSpectrum:
    _hyperstar_bounds(n, k)
    r1, r2 = _quadratic_roots(k - 2, (n - 1) * (k - 1))
    return ClosedFormSpectrum(
        descriptors((Rational(-1), (n - 1) * (k - 2)), (Rational(k - 2), n - 2), (r1, 1), (r2, 1)),
        hyperstar_order(n, k), f"A(hyperstar({n},{k}))")


def hyperstar_main_seidel(n: int, k: int) -> Tuple[Surd, Surd]:
    _hyperstar_bounds(n, k)
    return _quadratic_roots((k - 1) * (n - 3) + 1, (n - 1) * (k - 1))


def hyperstar_seidel(n: int, k: int) -> ClosedFormSpectrum:
    _hyperstar_bounds(n, k)
    r1, r2 = hyperstar_main_seidel(n, k)
    return ClosedFormSpectrum(
        descriptors((Rational(1), (n - 1) * (k - 2)), (Rational(3 - 2 * k), n - 2), (r1, 1), (r2, 1)),
        hyperstar_order(n, k), f"S(hyperstar({n},{k}))")


def hyperstar_seidel_energy(n: int, k: int) -> float:
    _hyperstar_bounds(n, k)
    return (n - 1) * (3 * k - 5) - (2 * k - 3) + math.sqrt(
        (k - 1) ** 2 * (n - 3) ** 2 + 2 * (k - 1) * (3 * n - 5) + 1)


def hyperstar_energy_monotone_in_k(n: int, k: int) -> bool:
    """SE(S_n^k) >= SE(S_n^{k-1}); the smaller hyperstar is S_n^k minus one fill vertex per edge."""
    _require(k >= 3, f"needs k >= 3 to compare with k-1, got k={k}")
    return hyperstar_seidel_energy(n, k) >= hyperstar_seidel_energy(n, k - 1) - 1e-12


# ---------- regular hypergraphs ----------
def regular_seidel_from_adjacency(adj_values: Sequence[float], n: int, k: int, r: int,
                                  tol: float = 1e-8) -> List[float]:
    vals = [float(v) for v in adj_values]
    perron = r * (k - 1)
    if not vals or abs(vals[0] - perron) > tol:
        raise NotRegularError(f"largest adjacency eigenvalue {vals[0] if vals else None} != r(k-1) = {perron}")
    return [n - 1 - 2 * vals[0]] + [-1 - 2 * v for v in vals[1:]]


def regular_seidel_closed_form(adjacency: ClosedFormSpectrum, n: int, k: int, r: int) -> ClosedFormSpectrum:
    """Exact descriptor version of the regular transform; the Perron descriptor must be Rational(r(k-1))."""
    perron = r * (k - 1)
    items = []
    seen_perron = False
    for d in adjacency.descriptors:
        if not seen_perron and isinstance(d.root, Rational) and d.root.exact() == perron:
            seen_perron = True
            items.append((d.root.affine(-2, n - 1), 1))
            if d.multiplicity > 1:
                items.append((d.root.affine(-2, -1), d.multiplicity - 1))
        else:
            items.append((d.root.affine(-2, -1), d.multiplicity))
    if not seen_perron:
        raise NotRegularError(f"no rational descriptor equals r(k-1) = {perron}")
    return ClosedFormSpectrum(descriptors(*items), adjacency.order, adjacency.name.replace("A(", "S(", 1))


def regular_walk_count(n: int, k: int, r: int, l: int) -> int:
    _require(l >= 0, f"walk length must be >= 0, got {l}")
    return n * (r * (k - 1)) ** l


# ---------- complete uniform ----------
def _complete_bounds(n: int, r: int) -> int:
    _require(2 <= r <= n, f"complete uniform closed forms need 2 <= r <= n, got n={n}, r={r}")
    return int(comb(n - 2, r - 2, exact=True))


def complete_uniform_adjacency(n: int, r: int) -> ClosedFormSpectrum:
    c = _complete_bounds(n, r)
    return ClosedFormSpectrum(descriptors((Rational((n - 1) * c), 1), (Rational(-c), n - 1)),
                              n, f"A(complete({n},{r}))")


def complete_uniform_seidel(n: int, r: int) -> ClosedFormSpectrum:
    c = _complete_bounds(n, r)
    return ClosedFormSpectrum(descriptors((Rational((n - 1) * (1 - 2 * c)), 1), (Rational(2 * c - 1), n - 1)),
                              n, f"S(complete({n},{r}))")


def complete_uniform_regularity(n: int, r: int) -> Tuple[int, int]:
    """(k, r) of K_n^r in the (k, r)-regular sense: uniformity r, degree C(n-1, r-1)."""
    _complete_bounds(n, r)
    return r, int(comb(n - 1, r - 1, exact=True))


# ---------- double hyperstar ----------
def _double_bounds(n1: int, n2: int, k: int) -> None:
    _require(n1 >= 2 and n2 >= 2 and k >= 3,
             f"double hyperstar closed forms need n1, n2 >= 2 and k >= 3, got ({n1},{n2},{k})")


def double_hyperstar_order(n1: int, n2: int, k: int) -> int:
    return n1 + n2 + (n1 + n2 - 1) * (k - 2)


def double_hyperstar_quintic(n1: int, n2: int, k: int) -> Tuple[int, ...]:
    """Printed quintic for the five non-trivial adjacency eigenvalues, leading coefficient first."""
    s = n1 + n2
    return (
        1,
        7 - 3 * k,
        17 + 3 * k ** 2 + s - k * (14 + s),
        -(-5 * (3 + s) + k * (17 + 7 * s) - k ** 2 * (7 + 2 * s) + k ** 3),
        -(-1 + (-7 + 12 * k - 6 * k ** 2 + k ** 3) * n1 + (7 - 5 * k + k ** 2 + (1 - k) * n1) * (k - 1) * n2),
        -(k - 1) * (-1 + s + (3 - 4 * k + k ** 2) * n2 * n1),
    )


def double_hyperstar_partition(n1: int, n2: int, k: int) -> Partition:
    return Partition.from_blocks(double_hyperstar_blocks(n1, n2, k), double_hyperstar_order(n1, n2, k))


def double_hyperstar_adjacency_quotient(n1: int, n2: int, k: int) -> np.ndarray:
    _double_bounds(n1, n2, k)
    H = gen_double_hyperstar(n1, n2, k)
    res = quotient_matrix(adjacency_matrix(H), double_hyperstar_partition(n1, n2, k))
    if not res.equitable:
        raise ParameterError(f"double hyperstar partition is not equitable for A: {res.witness}")
    return res.as_int()


def double_hyperstar_seidel_quotient(n1: int, n2: int, k: int) -> np.ndarray:
    _double_bounds(n1, n2, k)
    H = gen_double_hyperstar(n1, n2, k)
    res = quotient_matrix(seidel_matrix(H), double_hyperstar_partition(n1, n2, k))
    if not res.equitable:
        raise ParameterError(f"double hyperstar partition is not equitable for S: {res.witness}")
    return res.as_int()


def printed_double_hyperstar_seidel_quotient(n1: int, n2: int, k: int) -> np.ndarray:
    """The 5x5 quotient as typeset; the unbalanced '((n_2-1)(k-1)' in row 1 is read as (n_2-1)(k-1)."""
    a = (n1 - 1) * (k - 1)
    b = (n2 - 1) * (k - 1)
    return np.array([
        [0, -a, -1, b, 2 - k],
        [-1, (n1 - 3) * (k - 1) + 1, 1, b, k - 2],
        [-1, a, 0, -b, 2 - k],
        [1, a, -1, (n2 - 3) * (k - 1) + 1, k - 2],
        [-1, a, -1, b, 3 - k],
    ], dtype=object)


@dataclass
class FormulaComparison:
    name: str
    printed: List
    recomputed: List
    differences: List[Dict]

    @property
    def agrees(self) -> bool:
        return not self.differences


def compare_double_hyperstar_quintic(n1: int, n2: int, k: int) -> FormulaComparison:
    printed = list(double_hyperstar_quintic(n1, n2, k))
    recomputed = char_poly_coeffs(double_hyperstar_adjacency_quotient(n1, n2, k))
    diffs = [{"power": 5 - i, "printed": p, "recomputed": q}
             for i, (p, q) in enumerate(zip(printed, recomputed)) if p != q]
    if diffs:
        logger.warning("printed quintic disagrees with the quotient polynomial at (%d,%d,%d): %s", n1, n2, k, diffs)
    return FormulaComparison(f"quintic({n1},{n2},{k})", printed, recomputed, diffs)


def compare_double_hyperstar_seidel_quotient(n1: int, n2: int, k: int) -> FormulaComparison:
    printed = printed_double_hyperstar_seidel_quotient(n1, n2, k)
    recomputed = double_hyperstar_seidel_quotient(n1, n2, k)
    diffs = [{"entry": (i, j), "printed": int(printed[i, j]), "recomputed": int(recomputed[i, j])}
             for i in range(5) for j in range(5) if printed[i, j] != recomputed[i, j]]
    if diffs:
        logger.warning("printed Seidel quotient differs from the recomputed one at (%d,%d,%d) in %d entries",
                       n1, n2, k, len(diffs))
    return FormulaComparison(f"seidel-quotient({n1},{n2},{k})",
                             printed.tolist(), recomputed.tolist(), diffs)


def double_hyperstar_adjacency(n1: int, n2: int, k: int) -> ClosedFormSpectrum:
    _double_bounds(n1, n2, k)
    _require(n1 + n2 >= 4, "n1 + n2 >= 4 keeps the (k-2) multiplicity non-negative")
    s = n1 + n2
    # the printed quintic is used only when it matches the quotient polynomial exactly
    check = compare_double_hyperstar_quintic(n1, n2, k)
    quintic = check.printed if check.agrees else check.recomputed
    return ClosedFormSpectrum(
        descriptors((Rational(-1), (k - 2) * (s - 1) - 1), (Rational(k - 2), s - 4), *poly_roots(quintic)),
        double_hyperstar_order(n1, n2, k), f"A(double-hyperstar({n1},{n2},{k}))")


def double_hyperstar_seidel(n1: int, n2: int, k: int) -> ClosedFormSpectrum:
    """Five values come from the recomputed equitable quotient, never from the printed matrix."""
    _double_bounds(n1, n2, k)
    _require(n1 + n2 >= 4, "n1 + n2 >= 4 keeps the (3-2k) multiplicity non-negative")
    s = n1 + n2
    quintic = char_poly_coeffs(double_hyperstar_seidel_quotient(n1, n2, k))
    return ClosedFormSpectrum(
        descriptors((Rational(1), (k - 2) * (s - 1) - 1), (Rational(3 - 2 * k), s - 4), *poly_roots(quintic)),
        double_hyperstar_order(n1, n2, k), f"S(double-hyperstar({n1},{n2},{k}))")


# ---------- sunflower ----------
def _sunflower_bounds(k: int) -> None:
    _require(k >= 2, f"sunflower closed forms need k >= 2, got k={k}")


def sunflower_order(k: int) -> int:
    return k * (k - 1) + 1


def sunflower_adjacency_cubic(k: int) -> Tuple[int, int, int, int]:
    return (1, 4 - 2 * k, 6 - 6 * k + k * k, 2 - 3 * k + k * k)


def sunflower_seidel_cubic(k: int) -> Tuple[int, int, int, int]:
    return (1, -(6 - 5 * k + k * k), -(-17 + 26 * k - 12 * k * k + 2 * k ** 3), -8 + 17 * k - 11 * k * k + 2 * k ** 3)


@dataclass(frozen=True)
class FactoredPoly:
    """Product of integer polynomial factors (coefficients leading first) raised to exponents."""
    factors: Tuple[Tuple[Tuple[int, ...], int], ...]

    def evaluate(self, x: float) -> float:
        out = 1.0
        for coeffs, e in self.factors:
            out *= float(np.polyval(np.asarray(coeffs, dtype=float), x)) ** e
        return out

    @property
    def leading(self) -> int:
        out = 1
        for coeffs, e in self.factors:
            out *= coeffs[0] ** e
        return out

    def monic_evaluate(self, x: float) -> float:
        """Value of the monic polynomial det(xI - M) this product represents up to sign."""
        return self.evaluate(x) * (1 if self.leading > 0 else -1)

    def expand(self) -> List[int]:
        out = [1]
        for coeffs, e in self.factors:
            for _ in range(e):
                out = _poly_mul(out, list(coeffs))
        return out


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def sunflower_char_poly(k: int) -> FactoredPoly:
    """(1 + x)^{(k-1)(k-2)} * cubic * (-x^2 + (k-3) x + (2k-3))^{k-2}, as printed (sign not normalized)."""
    _sunflower_bounds(k)
    return FactoredPoly((
        ((1, 1), (k - 1) * (k - 2)),
        (sunflower_adjacency_cubic(k), 1),
        ((-1, k - 3, 2 * k - 3), k - 2),
    ))


def sunflower_adjacency(k: int) -> ClosedFormSpectrum:
    _sunflower_bounds(k)
    d = (k + 3) * (k - 1)
    cubic = sunflower_adjacency_cubic(k)
    return ClosedFormSpectrum(
        descriptors((Rational(-1), (k - 1) * (k - 2)),
                    (Surd(k - 3, 1, d, 2), k - 2), (Surd(k - 3, -1, d, 2), k - 2),
                    *poly_roots(cubic, cls=TrigCubicRoot)),
        sunflower_order(k), f"A(sunflower({k}))")


def sunflower_seidel_quotient_printed(k: int) -> np.ndarray:
    _sunflower_bounds(k)
    return np.array([
        [0, 1 - k, (k - 1) ** 2],
        [-1, 2 - k, (k - 1) * (k - 3)],
        [1, k - 3, (k - 2) ** 2],
    ], dtype=object)


def sunflower_seidel_quotient(k: int) -> np.ndarray:
    _sunflower_bounds(k)
    H = gen_sunflower(k)
    res = quotient_matrix(seidel_matrix(H), Partition.from_blocks(sunflower_blocks(k), H.n))
    if not res.equitable:
        raise ParameterError(f"sunflower partition is not equitable: {res.witness}")
    return res.as_int()


def sunflower_seidel(k: int) -> ClosedFormSpectrum:
    _sunflower_bounds(k)
    d = (k + 3) * (k - 1)
    return ClosedFormSpectrum(
        descriptors((Rational(1), (k - 1) * (k - 2)),
                    (Surd(2 - k, 1, d, 1), k - 2), (Surd(2 - k, -1, d, 1), k - 2),
                    *poly_roots(sunflower_seidel_cubic(k))),
        sunflower_order(k), f"S(sunflower({k}))")


# ---------- dispatch ----------
def closed_forms_for(family: str, params: Dict[str, int]) -> Dict[str, ClosedFormSpectrum]:
    """Adjacency and Seidel closed forms for a family member, or {} when none applies."""
    try:
        if family == "hyperstar" and params["n"] >= 3:
            return {"adjacency": hyperstar_adjacency(**params), "seidel": hyperstar_seidel(**params)}
        if family == "complete":
            return {"adjacency": complete_uniform_adjacency(**params), "seidel": complete_uniform_seidel(**params)}
        if family == "double-hyperstar" and params["n1"] + params["n2"] >= 4:
            return {"adjacency": double_hyperstar_adjacency(**params),
                    "seidel": double_hyperstar_seidel(**params)}
        if family == "sunflower":
            return {"adjacency": sunflower_adjacency(**params), "seidel": sunflower_seidel(**params)}
    except (KeyError, TypeError, ParameterError) as e:
        logger.info("no closed form for %s %s: %s", family, params, e)
    return {}
