from __future__ import annotations
import logging
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .families import FAMILIES, gen_power
from .hypergraph import Hypergraph, ParameterError, ParseError, StructureError, check_structure
from .matrices import IntSymMatrix, is_matrix_dump, parse_matrix_dump

logger = logging.getLogger(__name__)

_FAMILY_RE = re.compile(r"^#\s*family:\s*(?P<family>[\w-]+)\s*(?P<params>.*)$")
_PARAM_RE = re.compile(r"(\w+)=(-?\d+)")


@dataclass
class HypergraphBundle:
    """A hypergraph plus the family metadata that lets closed forms be attached to it."""
    hypergraph: Hypergraph
    family: Optional[str] = None
    params: Dict[str, int] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        if not self.name:
            self.name = family_name(self.family, self.params) if self.family else f"H(n={self.hypergraph.n})"

    def blocks(self) -> Optional[List[List[int]]]:
        """Canonical equitable partition of the family, if it has one."""
        if self.family not in FAMILIES:
            return None
        _, _, blocks = FAMILIES[self.family]
        return blocks(**self.params) if blocks else None


def family_name(family: str, params: Dict[str, int]) -> str:
    inner = ",".join(str(v) for v in params.values())
    return f"{family}({inner})"


def family_bundle(family: str, values: Sequence[int]) -> HypergraphBundle:
    """Generate a family member from positional parameters, e.g. ("hyperstar", [4, 3])."""
    if family not in FAMILIES:
        raise ParameterError(f"unknown family {family!r}; expected one of {sorted(FAMILIES)} or 'power'")
    names, gen, _ = FAMILIES[family]
    if len(values) != len(names):
        raise ParameterError(f"{family} takes {len(names)} parameters ({', '.join(names)}), got {len(values)}")
    params = dict(zip(names, (int(v) for v in values)))
    return HypergraphBundle(gen(**params), family, params)


def power_bundle(k: int, base_n: int, pairs: Sequence[Tuple[int, int]]) -> HypergraphBundle:
    H = gen_power(pairs, base_n, k)
    return HypergraphBundle(H, "power", {"k": k, "base_n": base_n}, name=f"power(k={k},base_n={base_n},m={len(pairs)})")


def parse_pairs(tokens: Sequence[str]) -> List[Tuple[int, int]]:
    """'0-1 1-2' or '0,1 1,2' style tokens to vertex pairs."""
    pairs = []
    for tok in tokens:
        bits = re.split(r"[-,:]", tok)
        if len(bits) != 2:
            raise ParameterError(f"cannot read base edge {tok!r}; use a-b")
        pairs.append((int(bits[0]), int(bits[1])))
    return pairs


# ---------- ".hg" text format ----------
def parse_hg(text: str) -> HypergraphBundle:
    n: Optional[int] = None
    edges: List[Tuple[int, ...]] = []
    family: Optional[str] = None
    params: Dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        m = _FAMILY_RE.match(raw.strip())
        if m:
            family = m.group("family")
            params = {k: int(v) for k, v in _PARAM_RE.findall(m.group("params"))}
            continue
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            values = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"expected integers, got {line!r}", lineno) from None
        if n is None:
            if len(values) != 1 or values[0] < 0:
                raise ParseError(f"first line must be a single vertex count, got {line!r}", lineno)
            n = values[0]
            continue
        try:
            edges.extend(check_structure(n, [values], first=len(edges)))
        except StructureError as e:
            raise ParseError(str(e), lineno) from None
    if n is None:
        raise ParseError("empty hypergraph file: missing vertex count", 1)
    H = Hypergraph(n, tuple(edges))
    bundle = HypergraphBundle(H)
    if family in FAMILIES:
        names = FAMILIES[family][0]
        if sorted(params) != sorted(names):
            logger.warning("family header %s%s rejected (expected parameters %s); metadata ignored",
                           family, params, list(names))
            return bundle
        try:
            regenerated = family_bundle(family, [params[p] for p in names])
        except ParameterError as e:
            logger.warning("family header %s%s rejected (%s); metadata ignored", family, params, e)
            return bundle
        if regenerated.hypergraph == H:
            return regenerated
        logger.warning("file claims family %s%s but its edges differ; metadata ignored", family, params)
    elif family:
        bundle = HypergraphBundle(H, family, params)
    return bundle


def format_hg(bundle: HypergraphBundle) -> str:
    H = bundle.hypergraph
    lines = []
    if bundle.family:
        ps = " ".join(f"{k}={v}" for k, v in bundle.params.items())
        lines.append(f"# family: {bundle.family} {ps}".rstrip())
    lines.append(str(H.n))
    lines.extend(" ".join(str(v) for v in e) for e in H.edges)
    return "\n".join(lines) + "\n"


def load_bundle(path: str) -> HypergraphBundle:
    loaded = load_input(path)
    if isinstance(loaded, IntSymMatrix):
        raise ParseError(f"{path} is a matrix dump, not a hypergraph")
    return loaded


def load_input(path: str) -> Union[HypergraphBundle, IntSymMatrix]:
    """A ".hg" hypergraph, or a matrix dump when the file carries the '# matrix:' header."""
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    if is_matrix_dump(text):
        return parse_matrix_dump(text)
    bundle = parse_hg(text)
    if bundle.family is None:
        bundle.name = path
    return bundle


def write_bundle(bundle: HypergraphBundle, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(format_hg(bundle))
