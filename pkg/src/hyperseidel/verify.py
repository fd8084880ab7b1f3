"""Check runners: every verifier applied to one hypergraph, family sweeps and seeded random suites."""
from __future__ import annotations
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Callable, Dict, Iterable, List, Sequence, Tuple

import numpy as np
import pandas as pd

from .closed_forms import (
    closed_forms_for,
    compare_double_hyperstar_quintic,
    compare_double_hyperstar_seidel_quotient,
    complete_uniform_regularity,
    double_hyperstar_seidel_quotient,
    hyperstar_energy_monotone_in_k,
    hyperstar_main_seidel,
    hyperstar_seidel_energy,
    regular_seidel_closed_form,
    regular_walk_count,
    sunflower_char_poly,
    sunflower_seidel_cubic,
    sunflower_seidel_quotient,
    sunflower_seidel_quotient_printed,
)
from .data_sources import HypergraphBundle, family_bundle
from .families import FAMILIES, gen_hyperstar, random_hypergraph
from .hypergraph import Hypergraph, ParameterError, delete_vertex, delete_vertices, validate
from .matrices import adjacency_matrix, char_poly_coeffs, seidel_matrix, walk_table
from .spectra import (
    char_poly_eval,
    check_interlacing as interlaces,
    eigen_symmetric,
    energy,
    main_count_via_rank,
    main_eigenvalues,
    sorted_difference,
    walk_gen_from_spectrum,
)
from .structure import (
    CheckReport,
    Partition,
    quotient_matrix,
    spectrum_containment,
    twin_classes,
    twin_eigenvector_check,
    verify_char_poly_identity,
    verify_multiplicity_transfer,
    verify_regular_identity,
)

logger = logging.getLogger(__name__)

CHECKS = ("identity", "regular-identity", "multiplicity", "quotient", "interlacing",
          "energy", "walks", "closed-form", "main", "twins")

DEFAULT_SWEEPS = {
    "hyperstar": {"n": [3, 8], "k": [2, 6]},
    "double_hyperstar": {"n1": [2, 5], "n2": [2, 5], "k": [3, 5]},
    "sunflower": {"k": [2, 8]},
    "complete": {"n": [3, 8]},
    "random": {"count": 100, "max_n": 10},
}


@dataclass(frozen=True)
class VerifySettings:
    points: Tuple[float, ...]
    group_tol: float = 1e-7
    verify_tol: float = 1e-8
    main_tol: float = 1e-6
    pole_tol: float = 1e-8
    interlace_slack: float = 1e-9
    identity_threshold: float = 1e-6
    energy_tol: float = 1e-9
    walk_length: int = 6
    walk_rel_tol: float = 1e-6
    poly_rel_tol: float = 1e-7


def parse_checks(text: str) -> List[str]:
    names = [t.strip() for t in text.split(",") if t.strip()]
    if not names:
        raise ParameterError("--checks must name at least one check")
    if names == ["all"]:
        return list(CHECKS)
    unknown = [c for c in names if c not in CHECKS]
    if unknown:
        raise ParameterError(f"unknown checks {unknown}; expected 'all' or a subset of {list(CHECKS)}")
    return names


class BundleAnalysis:
    """Matrices and eigendecompositions of one hypergraph, computed once and shared by the checks."""

    def __init__(self, bundle: HypergraphBundle, settings: VerifySettings):
        self.bundle = bundle
        self.H: Hypergraph = bundle.hypergraph
        self.settings = settings

    @property
    def name(self) -> str:
        return self.bundle.name

    @cached_property
    def A(self):
        return adjacency_matrix(self.H)

    @cached_property
    def S(self):
        return seidel_matrix(self.H)

    @cached_property
    def eig_A(self):
        return eigen_symmetric(self.A)

    @cached_property
    def eig_S(self):
        return eigen_symmetric(self.S)

    @cached_property
    def report(self):
        return validate(self.H)

    @cached_property
    def deletions(self) -> List[Tuple[int, np.ndarray]]:
        """(v, Seidel eigenvalues of H - v) for every vertex."""
        out = []
        for v in range(self.H.n):
            child = delete_vertex(self.H, v)
            out.append((v, eigen_symmetric(seidel_matrix(child)).values))
        return out


# ---------- individual checks ----------
def check_identity(a: BundleAnalysis) -> CheckReport:
    s = a.settings
    return verify_char_poly_identity(a.H, s.points, threshold=s.identity_threshold, pole_tol=s.pole_tol, name=a.name)


def check_regular_identity(a: BundleAnalysis) -> CheckReport:
    rep = a.report
    if rep.uniform_k is None or rep.regular_r is None:
        return CheckReport("regular-identity", a.name, True, skipped=True,
                           details={"reason": "not (k, r)-regular"})
    s = a.settings
    return verify_regular_identity(a.H, a.H.n, rep.uniform_k, rep.regular_r, s.points,
                                   threshold=s.verify_tol, pole_tol=s.pole_tol, name=a.name)


def check_multiplicity(a: BundleAnalysis) -> CheckReport:
    return verify_multiplicity_transfer(a.H, a.settings.group_tol, name=a.name)


def check_quotient(a: BundleAnalysis) -> CheckReport:
    blocks = a.bundle.blocks()
    if blocks is not None:
        kind, P = "canonical", Partition.from_blocks(blocks, a.H.n)
    else:
        kind, P = "twins", twin_classes(a.H)
    details: Dict[str, object] = {"partition": kind, "sizes": P.sizes}
    passed = True
    for label, M in (("adjacency", a.A), ("seidel", a.S)):
        res = quotient_matrix(M, P)
        contained = res.equitable and spectrum_containment(res, M, tol=a.settings.verify_tol)
        details[f"{label}_equitable"] = res.equitable
        details[f"{label}_contained"] = contained
        if not res.equitable:
            details[f"{label}_witness"] = res.witness
        passed = passed and contained
    return CheckReport("quotient", a.name, passed, details=details)


def check_interlacing(a: BundleAnalysis) -> CheckReport:
    parent = a.eig_S.values
    slack = a.settings.interlace_slack
    bad = [v for v, child in a.deletions if len(child) and not interlaces(parent, child, slack)]
    if bad:
        logger.warning("interlacing fails on %s for deleted vertices %s", a.name, bad)
    return CheckReport("interlacing", a.name, not bad, violations=len(bad), details={"vertices": bad})


def check_energy(a: BundleAnalysis) -> CheckReport:
    s = a.settings
    se = energy(a.eig_S.values)
    worst_gain = 0.0
    bad = []
    for v, child in a.deletions:
        gain = energy(child) - se
        worst_gain = max(worst_gain, gain)
        if gain > s.energy_tol:
            bad.append(v)
    details: Dict[str, object] = {"seidel_energy": se, "adjacency_energy": energy(a.eig_A.values),
                                  "max_gain_on_deletion": worst_gain}
    passed = not bad
    if a.bundle.family == "hyperstar" and a.bundle.params.get("n", 0) >= 3:
        n, k = a.bundle.params["n"], a.bundle.params["k"]
        formula = hyperstar_seidel_energy(n, k)
        details["closed_form_energy"] = formula
        ok = abs(formula - se) <= s.energy_tol * max(1.0, se)
        passed = passed and ok
        if k >= 3:
            # deleting the last fill vertex of every edge gives the hyperstar with k - 1
            last = [e[-1] for e in a.H.edges]
            smaller = delete_vertices(a.H, last)
            chain_ok = (smaller == gen_hyperstar(n, k - 1)
                        and hyperstar_energy_monotone_in_k(n, k)
                        and energy(eigen_symmetric(seidel_matrix(smaller)).values) <= se + s.energy_tol)
            details["monotone_in_k"] = chain_ok
            passed = passed and chain_ok
    if bad:
        logger.warning("Seidel energy grows on %s after deleting %s", a.name, bad)
    return CheckReport("energy", a.name, passed, violations=len(bad), details=details)


def check_walks(a: BundleAnalysis) -> CheckReport:
    s = a.settings
    table = walk_table(a.H, s.walk_length)
    gen = walk_gen_from_spectrum(a.eig_A)
    worst = 0.0
    for l, exact in enumerate(table.counts):
        approx = gen.walks(l)
        worst = max(worst, abs(approx - exact) / max(1.0, abs(exact)))
    details: Dict[str, object] = {"counts": list(table.counts)}
    passed = worst <= s.walk_rel_tol
    rep = a.report
    if rep.uniform_k is not None and rep.regular_r is not None:
        expected = [regular_walk_count(a.H.n, rep.uniform_k, rep.regular_r, l) for l in range(len(table))]
        details["regular_exact"] = expected == list(table.counts)
        passed = passed and details["regular_exact"]
    return CheckReport("walks", a.name, passed, max_rel_error=worst, details=details)


def _grid(k: int, count: int = 10) -> List[float]:
    return [float(x) for x in np.linspace(-k - 0.37, k + 0.61, count)]


def check_closed_form(a: BundleAnalysis) -> CheckReport:
    s = a.settings
    forms = closed_forms_for(a.bundle.family, a.bundle.params)
    if not forms:
        return CheckReport("closed-form", a.name, True, skipped=True, details={"reason": "no closed form"})
    numeric = {"adjacency": a.eig_A.values, "seidel": a.eig_S.values}
    details: Dict[str, object] = {}
    worst = 0.0
    for kind, form in forms.items():
        diff = sorted_difference(form.values(), numeric[kind])
        details[f"{kind}_max_diff"] = diff
        worst = max(worst, diff)
    passed = worst <= s.verify_tol
    se = energy(a.eig_S.values)
    details["closed_form_seidel_energy"] = forms["seidel"].energy()
    passed = passed and abs(forms["seidel"].energy() - se) <= s.energy_tol * max(1.0, se)

    family, p = a.bundle.family, a.bundle.params
    if family == "complete":
        k, r = complete_uniform_regularity(p["n"], p["r"])
        mapped = regular_seidel_closed_form(forms["adjacency"], p["n"], k, r)
        exact = sorted(d.root.exact() for d in mapped.descriptors) == sorted(
            d.root.exact() for d in forms["seidel"].descriptors)
        details["regular_transform_exact"] = exact
        passed = passed and exact
    elif family == "double-hyperstar":
        quintic = compare_double_hyperstar_quintic(p["n1"], p["n2"], p["k"])
        printed_q = compare_double_hyperstar_seidel_quotient(p["n1"], p["n2"], p["k"])
        double_hyperstar_seidel_quotient(p["n1"], p["n2"], p["k"])
        details["quintic_agrees"] = quintic.agrees
        details["printed_seidel_quotient_differences"] = len(printed_q.differences)
    elif family == "sunflower":
        k = p["k"]
        poly = sunflower_char_poly(k)
        rel = 0.0
        for x in _grid(k):
            lu = char_poly_eval(a.A, x)
            val = poly.monic_evaluate(x)
            scale = max(abs(lu), abs(val))
            rel = max(rel, 0.0 if scale == 0.0 else abs(lu - val) / scale)
        details["factored_poly_rel_error"] = rel
        passed = passed and rel <= s.poly_rel_tol
        if k >= 3:
            printed = sunflower_seidel_quotient_printed(k)
            same_q = bool((printed == sunflower_seidel_quotient(k)).all())
            cubic_ok = char_poly_coeffs(printed) == list(sunflower_seidel_cubic(k))
            details["printed_seidel_quotient_matches"] = same_q
            details["printed_seidel_cubic_matches"] = cubic_ok
            passed = passed and same_q and cubic_ok
    return CheckReport("closed-form", a.name, passed, max_rel_error=worst, details=details)


def check_main(a: BundleAnalysis) -> CheckReport:
    s = a.settings
    flags = main_eigenvalues(a.S, tol=s.main_tol, group_tol=s.group_tol, decomposition=a.eig_S)
    main_vals = [m.value for m in flags if m.is_main]
    rank = main_count_via_rank(a.S)
    passed = len(main_vals) == rank
    details: Dict[str, object] = {"main_values": main_vals, "krylov_rank": rank}
    if a.bundle.family == "hyperstar" and a.bundle.params.get("n", 0) >= 3:
        r1, r2 = hyperstar_main_seidel(a.bundle.params["n"], a.bundle.params["k"])
        expected = [r1.value, r2.value]
        found = sorted(main_vals, reverse=True)
        ok = len(found) == len(expected) == 2 and all(abs(x - y) <= s.verify_tol for x, y in zip(found, expected))
        details["matches_closed_form"] = ok
        passed = passed and ok and rank == 2
    if not passed:
        logger.warning("main eigenvalue check fails on %s: %s", a.name, details)
    return CheckReport("main", a.name, passed, details=details)


def check_twins(a: BundleAnalysis) -> CheckReport:
    return twin_eigenvector_check(a.H, tol=a.settings.verify_tol, group_tol=a.settings.group_tol, name=a.name)


RUNNERS: Dict[str, Callable[[BundleAnalysis], CheckReport]] = {
    "identity": check_identity,
    "regular-identity": check_regular_identity,
    "multiplicity": check_multiplicity,
    "quotient": check_quotient,
    "interlacing": check_interlacing,
    "energy": check_energy,
    "walks": check_walks,
    "closed-form": check_closed_form,
    "main": check_main,
    "twins": check_twins,
}


def run_checks(bundle: HypergraphBundle, checks: Sequence[str], settings: VerifySettings) -> List[CheckReport]:
    a = BundleAnalysis(bundle, settings)
    out = []
    for name in checks:
        rep = RUNNERS[name](a)
        if not rep.passed:
            logger.warning("%s failed on %s", name, a.name)
        out.append(rep)
    logger.debug("checked %s (n=%d): %d/%d passed", a.name, a.H.n, sum(r.passed for r in out), len(out))
    return out


def _run_one(job: Tuple[HypergraphBundle, Tuple[str, ...], VerifySettings]) -> List[CheckReport]:
    return run_checks(*job)


def run_suite(bundles: Sequence[HypergraphBundle], checks: Sequence[str], settings: VerifySettings,
              jobs: int = 1) -> List[CheckReport]:
    """Checks for every bundle, flattened in bundle order whatever the completion order."""
    work = [(b, tuple(checks), settings) for b in bundles]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            nested = list(pool.map(_run_one, work))
    else:
        nested = [_run_one(w) for w in work]
    return [rep for reps in nested for rep in reps]


# ---------- bundle sources ----------
def sweep_bundles(family: str, ranges: Dict[str, Tuple[int, int]]) -> List[HypergraphBundle]:
    """Every family member with parameters in the inclusive ranges; complete defaults r to 2..n."""
    if family not in FAMILIES:
        raise ParameterError(f"unknown family {family!r} for a sweep")
    names = FAMILIES[family][0]
    if family == "complete":
        n_lo, n_hi = ranges["n"]
        r_lo, r_hi = ranges.get("r", (2, n_hi))
        return [family_bundle("complete", [n, r]) for n in range(n_lo, n_hi + 1)
                for r in range(r_lo, min(r_hi, n) + 1)]
    missing = [p for p in names if p not in ranges]
    if missing:
        raise ParameterError(f"{family} sweep needs ranges for {missing}")
    grids = [range(ranges[p][0], ranges[p][1] + 1) for p in names]
    return [family_bundle(family, list(values)) for values in product(*grids)]


def random_bundles(count: int, max_n: int, seed: int) -> List[HypergraphBundle]:
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        n = int(rng.integers(2, max_n + 1))
        m = int(rng.integers(1, 2 * n + 1))
        H = random_hypergraph(n, m, rng)
        out.append(HypergraphBundle(H, name=f"random#{i}(n={n},m={m})"))
    return out


def results_frame(reports: Iterable[CheckReport]) -> pd.DataFrame:
    rows = [{"hypergraph": r.hypergraph, "check": r.check, "passed": r.passed, "skipped": r.skipped,
             "max_rel_error": r.max_rel_error, "violations": r.violations, "points_used": r.points_used}
            for r in reports]
    return pd.DataFrame(rows, columns=["hypergraph", "check", "passed", "skipped", "max_rel_error",
                                       "violations", "points_used"])
