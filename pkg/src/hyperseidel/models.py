"""Symbolic eigenvalue descriptors: rationals, quadratic surds and roots of integer polynomials."""
from __future__ import annotations
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from .hypergraph import HypergraphError, ParameterError
from .polyroots import real_roots


@dataclass(frozen=True)
class Rational:
    p: int
    q: int = 1
    kind = "rational"

    @property
    def value(self) -> float:
        return self.p / self.q

    def exact(self) -> Fraction:
        return Fraction(self.p, self.q)

    def affine(self, alpha: int, beta: int) -> "Rational":
        f = alpha * self.exact() + beta
        return Rational(f.numerator, f.denominator)

    def params(self) -> Dict[str, Any]:
        return {"p": self.p, "q": self.q}


@dataclass(frozen=True)
class Surd:
    """(a + sign * sqrt(d)) / c with integers a, d >= 0, c != 0."""
    a: int
    sign: int
    d: int
    c: int
    kind = "surd"

    def __post_init__(self):
        if self.d < 0:
            raise HypergraphError(f"surd radicand must be >= 0, got {self.d}")
        if self.sign not in (1, -1) or self.c == 0:
            raise HypergraphError("surd needs sign in {1, -1} and c != 0")

    @property
    def value(self) -> float:
        return (self.a + self.sign * math.sqrt(self.d)) / self.c

    def conjugate(self) -> "Surd":
        return Surd(self.a, -self.sign, self.d, self.c)

    def norm(self) -> Fraction:
        """Exact product with the conjugate: (a^2 - d) / c^2."""
        return Fraction(self.a * self.a - self.d, self.c * self.c)

    def trace(self) -> Fraction:
        """Exact sum with the conjugate: 2a / c."""
        return Fraction(2 * self.a, self.c)

    def is_rational(self) -> bool:
        return math.isqrt(self.d) ** 2 == self.d

    def affine(self, alpha: int, beta: int) -> "Surd":
        # alpha * (a + s sqrt d)/c + beta = (alpha a + beta c + s*sign(alpha) sqrt(alpha^2 d)) / c
        sgn = self.sign if alpha >= 0 else -self.sign
        return Surd(alpha * self.a + beta * self.c, sgn, alpha * alpha * self.d, self.c)

    def params(self) -> Dict[str, Any]:
        return {"a": self.a, "sign": self.sign, "d": self.d, "c": self.c}


@dataclass(frozen=True)
class PolyRoot:
    """index-th real root (descending) of a monic integer polynomial, coefficients leading first."""
    coeffs: Tuple[int, ...]
    index: int
    kind = "poly_root"

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        if not coeffs or coeffs[0] == 0:
            raise HypergraphError("polynomial needs a nonzero leading coefficient")
        if coeffs[0] != 1:
            lead = coeffs[0]
            if any(c % lead for c in coeffs):
                raise HypergraphError(f"polynomial {coeffs} cannot be normalized to monic over the integers")
            coeffs = tuple(c // lead for c in coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if not 0 <= self.index < len(coeffs) - 1:
            raise HypergraphError(f"root index {self.index} out of range for degree {len(coeffs) - 1}")

    @property
    def value(self) -> float:
        return real_roots(self.coeffs)[self.index]

    def params(self) -> Dict[str, Any]:
        return {"coeffs": list(self.coeffs), "index": self.index}


@dataclass(frozen=True)
class TrigCubicRoot(PolyRoot):
    """Root of a monic cubic with three real roots, evaluated by the trigonometric formula."""

    @property
    def value(self) -> float:
        return trig_cubic_roots(self.coeffs)[self.index]

    def params(self) -> Dict[str, Any]:
        out = super().params()
        out["method"] = "trig"
        return out


def trig_cubic_roots(coeffs: Sequence[int], slack: float = 1e-12) -> Tuple[float, float, float]:
    """x^3 + a x^2 + b x + c: x = -a/3 + (2/3) sqrt(a^2 - 3b) cos((theta + 2 pi i)/3), descending."""
    _, a, b, c = (int(v) for v in coeffs)
    disc = a * a - 3 * b
    if disc <= 0:
        raise ParameterError(f"cubic {tuple(coeffs)} has no trigonometric three-real-root form")
    arg = (-2 * a ** 3 + 9 * a * b - 27 * c) / (2.0 * math.sqrt(disc) ** 3)
    if abs(arg) > 1.0 + slack:
        raise ParameterError(f"arccos argument {arg!r} outside [-1, 1]")
    theta = math.acos(min(1.0, max(-1.0, arg)))
    r = [(-a + 2.0 * math.sqrt(disc) * math.cos((theta + 2.0 * math.pi * i) / 3.0)) / 3.0 for i in range(3)]
    return tuple(sorted(r, reverse=True))


Root = Union[Rational, Surd, PolyRoot]


@dataclass(frozen=True)
class EigDescriptor:
    root: Root
    multiplicity: int

    def __post_init__(self):
        if self.multiplicity < 1:
            raise HypergraphError(f"multiplicity must be >= 1, got {self.multiplicity}")

    @property
    def kind(self) -> str:
        return self.root.kind

    @property
    def value(self) -> float:
        return self.root.value

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "params": self.root.params(),
                "multiplicity": self.multiplicity, "value": self.value}


def descriptors(*items: Tuple[Root, int]) -> List[EigDescriptor]:
    """Descriptors for (root, multiplicity) pairs, dropping zero multiplicities at family boundaries."""
    return [EigDescriptor(r, m) for r, m in items if m > 0]


def poly_roots(coeffs: Sequence[int], cls=PolyRoot) -> List[Tuple[Root, int]]:
    deg = len(coeffs) - 1
    return [(cls(tuple(coeffs), i), 1) for i in range(deg)]


@dataclass(frozen=True)
class ClosedFormSpectrum:
    descriptors: Tuple[EigDescriptor, ...]
    order: int
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "descriptors", tuple(self.descriptors))
        total = sum(d.multiplicity for d in self.descriptors)
        if total != self.order:
            raise HypergraphError(f"{self.name or 'closed form'}: multiplicities sum to {total}, expected {self.order}")

    def values(self) -> np.ndarray:
        vals = [d.value for d in self.descriptors for _ in range(d.multiplicity)]
        return np.sort(np.asarray(vals, dtype=float))[::-1]

    def trace(self) -> float:
        return float(sum(d.value * d.multiplicity for d in self.descriptors))

    def energy(self) -> float:
        return float(sum(abs(d.value) * d.multiplicity for d in self.descriptors))

    def to_records(self) -> List[Dict[str, Any]]:
        return [d.to_dict() for d in self.descriptors]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([{"kind": d.kind, "value": d.value, "multiplicity": d.multiplicity}
                             for d in self.descriptors])
