from __future__ import annotations
import argparse
import logging
import os
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import yaml

from .closed_forms import closed_forms_for
from .data_sources import (
    HypergraphBundle,
    family_bundle,
    load_bundle,
    load_input,
    parse_pairs,
    power_bundle,
    write_bundle,
)
from .families import FAMILIES
from .hypergraph import ConvergenceError, HypergraphError, ParameterError, validate
from .matrices import (
    IntSymMatrix,
    adjacency_matrix,
    seidel_matrix,
    walk_table,
    write_matrix_dump,
)
from .report import FORMATS, render, verify_payload
from .spectra import (
    eigen_symmetric,
    energy,
    group_spectrum,
    main_count_via_rank,
    main_eigenvalues,
    walk_gen_from_spectrum,
)
from .structure import (
    Partition,
    quotient_eigenvalues,
    quotient_matrix,
    sample_points,
    spectrum_containment,
    twin_classes,
)
from .verify import DEFAULT_SWEEPS, VerifySettings, parse_checks, random_bundles, run_suite, sweep_bundles

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2
MATRICES = ("adjacency", "seidel")


def load_config(path: str) -> Dict[str, Any]:
    if not os.path.exists(path):
        logger.info("config %s not found; using built-in defaults", path)
        return {}
    with open(path, "r", encoding="utf-8") as f:
        return yaml.safe_load(f) or {}


@dataclass
class RunConfig:
    """Everything one invocation needs, resolved from config.yaml and the command line."""
    command: str
    input_path: Optional[str] = None
    family: Optional[str] = None
    params: List[str] = field(default_factory=list)
    ranges: Dict[str, Tuple[int, int]] = field(default_factory=dict)
    random_count: Optional[int] = None
    matrix: str = "seidel"
    fmt: str = "text"
    csv_digits: int = 12
    tol_group: float = 1e-7
    tol_verify: float = 1e-8
    tol_main: float = 1e-6
    tol_pole: float = 1e-8
    tol_interlace: float = 1e-9
    seed: int = 20240611
    sample_count: int = 20
    sample_low: float = -10.0
    sample_high: float = 10.0
    random_max_n: int = 10
    jobs: int = 1

    def __post_init__(self):
        sources = sum(x is not None and x != [] for x in (self.input_path, self.family, self.random_count))
        if self.command != "gen" and sources != 1:
            raise ParameterError("give exactly one input source: --input, --family or --random")
        for name in ("tol_group", "tol_verify", "tol_main", "tol_pole", "tol_interlace"):
            if getattr(self, name) <= 0:
                raise ParameterError(f"{name.replace('_', '-')} must be > 0, got {getattr(self, name)}")
        if self.fmt not in FORMATS:
            raise ParameterError(f"unknown format {self.fmt!r}; expected one of {FORMATS}")
        if self.matrix not in MATRICES:
            raise ParameterError(f"unknown matrix {self.matrix!r}; expected one of {MATRICES}")
        if self.jobs < 1:
            raise ParameterError(f"--jobs must be >= 1, got {self.jobs}")

    def settings(self) -> VerifySettings:
        points = sample_points(self.seed, self.sample_count, self.sample_low, self.sample_high)
        return VerifySettings(points=tuple(points), group_tol=self.tol_group, verify_tol=self.tol_verify,
                              main_tol=self.tol_main, pole_tol=self.tol_pole, interlace_slack=self.tol_interlace)


def parse_range(text: str) -> Tuple[int, int]:
    """'3..8' or '5' to an inclusive (low, high)."""
    try:
        if ".." in text:
            lo, hi = (int(t) for t in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise ParameterError(f"cannot read range {text!r}; use a..b") from None
    if lo > hi:
        raise ParameterError(f"empty range {text!r}")
    return lo, hi


def _flag_or(args: argparse.Namespace, name: str, default):
    value = getattr(args, name, None)
    return default if value is None else value


def resolve_config(args: argparse.Namespace, cfg: Dict[str, Any]) -> RunConfig:
    tol = cfg.get("tolerances", {}) or {}
    samples = cfg.get("samples", {}) or {}
    rep = cfg.get("report", {}) or {}
    sweeps = cfg.get("sweeps", {}) or {}
    default_fmt = "json" if args.command == "verify" else rep.get("format", "text")
    ranges: Dict[str, Tuple[int, int]] = {}
    family = getattr(args, "family", None)
    params = list(getattr(args, "params", None) or [])
    if args.command == "verify" and family and not params:
        key = family.replace("-", "_")
        preset = sweeps.get(key) or DEFAULT_SWEEPS.get(key, {})
        ranges = {k: (int(v[0]), int(v[1])) for k, v in preset.items()}
        for name in ("n", "k", "n1", "n2", "r"):
            given = getattr(args, name, None)
            if given:
                ranges[name] = parse_range(given)
    return RunConfig(
        command=args.command,
        input_path=getattr(args, "input", None),
        family=family,
        params=params,
        ranges=ranges,
        random_count=getattr(args, "random", None),
        matrix=getattr(args, "matrix", None) or "seidel",
        fmt=getattr(args, "format", None) or default_fmt,
        csv_digits=int(rep.get("csv_digits", 12)),
        tol_group=_flag_or(args, "tol_group", float(tol.get("group", 1e-7))),
        tol_verify=_flag_or(args, "tol_verify", float(tol.get("verify", 1e-8))),
        tol_main=float(tol.get("main", 1e-6)),
        tol_pole=float(tol.get("pole", 1e-8)),
        tol_interlace=float(tol.get("interlace", 1e-9)),
        seed=_flag_or(args, "seed", int(samples.get("seed", 20240611))),
        sample_count=int(samples.get("count", 20)),
        sample_low=float(samples.get("low", -10.0)),
        sample_high=float(samples.get("high", 10.0)),
        random_max_n=int((sweeps.get("random") or DEFAULT_SWEEPS["random"]).get("max_n", 10)),
        jobs=_flag_or(args, "jobs", 1),
    )


# ---------- inputs ----------
def load_source(rc: RunConfig) -> Union[HypergraphBundle, IntSymMatrix]:
    if rc.input_path:
        return load_input(rc.input_path)
    if rc.family == "power":
        return _power_from_tokens([str(p) for p in rc.params])
    return family_bundle(rc.family, rc.params)


def _power_from_tokens(tokens: Sequence[str]) -> HypergraphBundle:
    """k base_n pairs...  or  k base.hg"""
    if len(tokens) == 2 and tokens[1].endswith(".hg"):
        base = load_bundle(tokens[1]).hypergraph
        if any(len(e) != 2 for e in base.edges):
            raise ParameterError(f"power base {tokens[1]} must be a graph (all edges of size 2)")
        return power_bundle(int(tokens[0]), base.n, [tuple(e) for e in base.edges])
    if len(tokens) < 2:
        raise ParameterError("power takes k, base_n and base edges a-b, or k and a base .hg file")
    try:
        k, base_n = int(tokens[0]), int(tokens[1])
    except ValueError:
        raise ParameterError(f"power needs integer k and base_n, got {tokens[:2]}") from None
    return power_bundle(k, base_n, parse_pairs(tokens[2:]))


def _require_bundle(source, command: str) -> HypergraphBundle:
    if isinstance(source, IntSymMatrix):
        raise ParameterError(f"{command} needs a hypergraph; matrix dumps only support spectrum, energy and main-eigs")
    return source


def _matrix_of(source, kind: str) -> Tuple[IntSymMatrix, str, str]:
    if isinstance(source, IntSymMatrix):
        return source, "matrix dump", "dumped matrix"
    M = adjacency_matrix(source.hypergraph) if kind == "adjacency" else seidel_matrix(source.hypergraph)
    return M, source.name, kind


def _closed_form(source, kind: str):
    if isinstance(source, IntSymMatrix) or not source.family:
        return None
    return closed_forms_for(source.family, source.params).get(kind)


# ---------- commands ----------
def cmd_gen(family: str, params: Sequence[str], out_path: Optional[str]) -> Dict[str, Any]:
    if family == "power":
        bundle = _power_from_tokens(params)
    else:
        try:
            values = [int(p) for p in params]
        except ValueError:
            raise ParameterError(f"{family} parameters must be integers, got {list(params)}") from None
        bundle = family_bundle(family, values)
    path = out_path or f"{family}_{'_'.join(str(v) for v in bundle.params.values())}.hg"
    write_bundle(bundle, path)
    H = bundle.hypergraph
    rep = validate(H)
    logger.info("generated %s with %d vertices and %d edges", bundle.name, H.n, H.m)
    return {"command": "gen", "path": path, "hypergraph": bundle.name, "order": H.n, "edges": H.m,
            "validation": rep.describe(), "uniform_k": rep.uniform_k, "regular_r": rep.regular_r,
            "table": [{"path": path, "order": H.n, "edges": H.m, "rank": rep.rank, "corank": rep.corank,
                       "uniform_k": rep.uniform_k, "regular_r": rep.regular_r}]}


def cmd_spectrum(source, kind: str, rc: RunConfig, dump_path: Optional[str] = None) -> Dict[str, Any]:
    M, name, label = _matrix_of(source, kind)
    if dump_path:
        write_matrix_dump(M, dump_path, kind=label)
    D = eigen_symmetric(M)
    flags = main_eigenvalues(M, tol=rc.tol_main, group_tol=rc.tol_group, decomposition=D)
    spectrum = group_spectrum(D.values, rc.tol_group)
    form = _closed_form(source, kind)
    closed_values = sorted({round(d.value, 12) for d in form.descriptors}) if form else []
    table = []
    for (value, mult), flag in zip(spectrum.pairs, flags):
        match = next((c for c in closed_values if abs(c - value) <= 1e-6), None)
        table.append({"value": value, "multiplicity": mult, "main": flag.is_main,
                      "closed_form": match})
    validation = None if isinstance(source, IntSymMatrix) else validate(source.hypergraph).describe()
    return {"command": "spectrum", "hypergraph": name, "matrix": label, "order": M.n,
            "validation": validation, "energy": energy(D.values),
            "closed_form_energy": form.energy() if form else None,
            "closed_form_descriptors": form.to_records() if form else None,
            "trace": float(D.values.sum()) if M.n else 0.0,
            "krylov_rank": main_count_via_rank(M), "residual": D.residual, "table": table}


def cmd_energy(source, rc: RunConfig) -> Dict[str, Any]:
    kinds = ("dumped matrix",) if isinstance(source, IntSymMatrix) else MATRICES
    table = []
    for kind in kinds:
        M, name, label = _matrix_of(source, kind)
        form = _closed_form(source, kind)
        table.append({"matrix": label, "energy": energy(eigen_symmetric(M).values),
                      "closed_form": form.energy() if form else None})
    return {"command": "energy", "hypergraph": name, "order": M.n, "table": table}


def cmd_main_eigs(source, kind: str, rc: RunConfig) -> Dict[str, Any]:
    M, name, label = _matrix_of(source, kind)
    flags = main_eigenvalues(M, tol=rc.tol_main, group_tol=rc.tol_group)
    table = [{"value": f.value, "multiplicity": f.multiplicity, "main": f.is_main, "projection": f.projection}
             for f in flags]
    return {"command": "main-eigs", "hypergraph": name, "matrix": label, "krylov_rank": main_count_via_rank(M),
            "main_count": sum(1 for f in flags if f.is_main), "table": table}


def cmd_quotient(source, kind: str, partition: str, rc: RunConfig) -> Dict[str, Any]:
    bundle = _require_bundle(source, "quotient")
    M, name, label = _matrix_of(bundle, kind)
    if partition == "canonical":
        blocks = bundle.blocks()
        if blocks is None:
            raise ParameterError(f"{name} has no canonical partition; use --partition twins")
        P = Partition.from_blocks(blocks, bundle.hypergraph.n)
    else:
        P = twin_classes(bundle.hypergraph)
    res = quotient_matrix(M, P)
    eigenvalues = [float(v) for v in quotient_eigenvalues(res.as_float(), res.sizes)] if res.equitable else []
    contained = res.equitable and spectrum_containment(res, M, tol=rc.tol_verify)
    table = [{"block": i, "size": s, **{f"q{j}": str(v) for j, v in enumerate(row)}}
             for i, (s, row) in enumerate(zip(res.sizes, res.Q))]
    return {"command": "quotient", "hypergraph": name, "matrix": label, "partition": partition,
            "sizes": list(res.sizes), "equitable": res.equitable, "witness": res.witness,
            "quotient": [[str(v) for v in row] for row in res.Q], "eigenvalues": eigenvalues,
            "contained": contained, "table": table}


def cmd_walks(source, length: int, rc: RunConfig) -> Dict[str, Any]:
    bundle = _require_bundle(source, "walks")
    H = bundle.hypergraph
    exact = walk_table(H, length)
    gen = walk_gen_from_spectrum(eigen_symmetric(adjacency_matrix(H)))
    table = [{"length": l, "exact": str(c), "spectral": gen.walks(l)} for l, c in enumerate(exact.counts)]
    return {"command": "walks", "hypergraph": bundle.name, "length": length, "table": table}


def cmd_verify(rc: RunConfig, checks: Sequence[str]) -> Tuple[Dict[str, Any], int]:
    if rc.random_count is not None:
        bundles = random_bundles(rc.random_count, rc.random_max_n, rc.seed)
    elif rc.input_path:
        bundles = [_require_bundle(load_source(rc), "verify")]
    elif rc.params:
        bundles = [_require_bundle(load_source(rc), "verify")]
    else:
        if not rc.ranges:
            raise ParameterError(f"no parameter ranges for a {rc.family} sweep; pass --params or ranges")
        bundles = sweep_bundles(rc.family, rc.ranges)
    settings = rc.settings()
    logger.info("verifying %d hypergraphs with checks %s (jobs=%d)", len(bundles), ",".join(checks), rc.jobs)
    reports = run_suite(bundles, checks, settings, jobs=rc.jobs)
    meta = {"seed": rc.seed, "points": list(settings.points), "checks": list(checks),
            "tolerances": {"group": rc.tol_group, "verify": rc.tol_verify, "main": rc.tol_main,
                           "pole": rc.tol_pole, "interlace": rc.tol_interlace}}
    payload = verify_payload([r.to_dict() for r in reports], meta)
    return payload, EXIT_OK if payload["passed"] else EXIT_FAILED


# ---------- argument parsing ----------
def _add_input_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", help=".hg hypergraph file (or a matrix dump for spectrum/energy/main-eigs)")
    p.add_argument("--family", choices=sorted(FAMILIES) + ["power"])
    p.add_argument("--params", nargs="+", help="family parameters, e.g. --params 4 3")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--tol-group", type=float)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hyperseidel", description="Seidel and adjacency spectra of hypergraphs")
    ap.add_argument("--config", default="config.yaml")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a family member as a .hg file")
    g.add_argument("family", choices=sorted(FAMILIES) + ["power"])
    g.add_argument("params", nargs="+")
    g.add_argument("-o", "--output")
    g.add_argument("--format", choices=FORMATS)

    for name in ("spectrum", "energy", "main-eigs", "quotient", "walks"):
        p = sub.add_parser(name)
        _add_input_flags(p)
        if name in ("spectrum", "main-eigs", "quotient"):
            p.add_argument("--matrix", choices=MATRICES, default="seidel")
        if name == "spectrum":
            p.add_argument("--dump-matrix")
        if name == "quotient":
            p.add_argument("--partition", choices=("canonical", "twins"), default="canonical")
            p.add_argument("--tol-verify", type=float)
        if name == "walks":
            p.add_argument("--length", type=int, default=6)

    v = sub.add_parser("verify", help="run verifiers; exit 0 iff all pass")
    _add_input_flags(v)
    v.add_argument("--random", type=int, help="number of seeded random hypergraphs")
    for name in ("n", "k", "n1", "n2", "r"):
        v.add_argument(f"--{name}", help="inclusive range a..b for family sweeps")
    v.add_argument("--checks", default="all")
    v.add_argument("--seed", type=int)
    v.add_argument("--tol-verify", type=float)
    v.add_argument("--jobs", type=int, default=1)
    return ap


def dispatch(args: argparse.Namespace, rc: RunConfig) -> Tuple[Dict[str, Any], int]:
    if args.command == "gen":
        return cmd_gen(args.family, args.params, args.output), EXIT_OK
    if args.command == "verify":
        return cmd_verify(rc, parse_checks(args.checks))
    source = load_source(rc)
    if args.command == "spectrum":
        return cmd_spectrum(source, rc.matrix, rc, args.dump_matrix), EXIT_OK
    if args.command == "energy":
        return cmd_energy(source, rc), EXIT_OK
    if args.command == "main-eigs":
        return cmd_main_eigs(source, rc.matrix, rc), EXIT_OK
    if args.command == "quotient":
        return cmd_quotient(source, rc.matrix, args.partition, rc), EXIT_OK
    if args.command == "walks":
        if args.length < 0:
            raise ParameterError(f"--length must be >= 0, got {args.length}")
        return cmd_walks(source, args.length, rc), EXIT_OK
    raise ParameterError(f"unknown command {args.command!r}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        cfg = load_config(args.config)
        rc = resolve_config(args, cfg)
        payload, code = dispatch(args, rc)
    except ConvergenceError as e:
        logger.error("%s", e)
        return EXIT_FAILED
    except (HypergraphError, OSError, yaml.YAMLError) as e:
        logger.error("%s: %s", type(e).__name__, e)
        return EXIT_USAGE
    sys.stdout.write(render(payload, rc.fmt, rc.csv_digits))
    return code


if __name__ == "__main__":
    sys.exit(main())
