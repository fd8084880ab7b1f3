from __future__ import annotations
import io
import json
from fractions import Fraction
from typing import Any, Dict, List

import numpy as np
import pandas as pd
from jinja2 import Template

from .hypergraph import ParameterError

FORMATS = ("text", "json", "csv")

SPECTRUM_TMPL = Template("""\
{{ hypergraph }}: {{ matrix }} spectrum (n={{ order }}{% if validation %}, {{ validation }}{% endif %})
{{ '%-22s'|format('value') }} {{ '%5s'|format('mult') }}  main  closed form
{% for r in table -%}
{{ '%-22.12g'|format(r.value) }} {{ '%5d'|format(r.multiplicity) }}  {{ 'yes ' if r.main else 'no  ' }}  \
{{ '%.12g'|format(r.closed_form) if r.closed_form is not none else '-' }}
{% endfor -%}
energy {{ '%.12g'|format(energy) }}{% if closed_form_energy is not none %} (closed form {{ '%.12g'|format(closed_form_energy) }}){% endif %}
trace {{ '%.6g'|format(trace) }}, Krylov rank {{ krylov_rank }}
""")

ENERGY_TMPL = Template("""\
{{ hypergraph }} (n={{ order }})
{% for r in table -%}
{{ '%-10s'|format(r.matrix) }} energy {{ '%.12g'|format(r.energy) }}\
{% if r.closed_form is not none %}  closed form {{ '%.12g'|format(r.closed_form) }}{% endif %}
{% endfor -%}
""")

MAIN_TMPL = Template("""\
{{ hypergraph }}: main eigenvalues of {{ matrix }} (Krylov rank {{ krylov_rank }})
{% for r in table -%}
{{ '%-22.12g'|format(r.value) }} mult {{ r.multiplicity }}  {{ 'main' if r.main else '-' }}  |P j| = {{ '%.3e'|format(r.projection) }}
{% endfor -%}
""")

QUOTIENT_TMPL = Template("""\
{{ hypergraph }}: {{ partition }} partition of {{ matrix }}, block sizes {{ sizes }}
equitable: {{ 'yes' if equitable else 'no' }}{% if witness %} (rows {{ witness.rows }} of blocks {{ witness.blocks }} sum to {{ witness.sums }}){% endif %}
{% for row in quotient -%}
  {{ row|join('  ') }}
{% endfor -%}
{% if equitable %}quotient eigenvalues: {{ eigenvalues|map('round', 9)|join(', ') }}
contained in the spectrum: {{ 'yes' if contained else 'no' }}
{% endif -%}
""")

WALKS_TMPL = Template("""\
{{ hypergraph }}: walk counts N_0..N_{{ length }}
{% for r in table -%}
N_{{ r.length }} = {{ r.exact }}  (spectral {{ '%.12g'|format(r.spectral) }})
{% endfor -%}
""")

VERIFY_TMPL = Template("""\
{% for r in results -%}
{{ 'SKIP' if r.skipped else ('PASS' if r.passed else 'FAIL') }}  {{ '%-16s'|format(r.check) }} {{ r.hypergraph }}\
{% if r.max_rel_error is defined %}  err={{ '%.3e'|format(r.max_rel_error) }}{% endif %}\
{% if r.violations %}  violations={{ r.violations }}{% endif %}
{% endfor -%}
{{ summary.passed }}/{{ summary.total }} passed, {{ summary.failed }} failed, {{ summary.skipped }} skipped
""")

GEN_TMPL = Template("""\
wrote {{ path }}: {{ hypergraph }} n={{ order }} m={{ edges }}, {{ validation }}
""")

TEMPLATES = {
    "gen": GEN_TMPL,
    "spectrum": SPECTRUM_TMPL,
    "energy": ENERGY_TMPL,
    "main-eigs": MAIN_TMPL,
    "quotient": QUOTIENT_TMPL,
    "walks": WALKS_TMPL,
    "verify": VERIFY_TMPL,
}


def _jsonable(obj: Any):
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, tuple):
        return list(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_json(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, indent=2, default=_jsonable) + "\n"


def to_csv(payload: Dict[str, Any], digits: int = 12) -> str:
    rows = payload.get("table") or payload.get("results") or []
    df = pd.DataFrame(rows)
    buf = io.StringIO()
    df.to_csv(buf, index=False, float_format=f"%.{digits}g")
    return buf.getvalue()


def to_text(payload: Dict[str, Any]) -> str:
    return TEMPLATES[payload["command"]].render(**payload)


def render(payload: Dict[str, Any], fmt: str = "text", csv_digits: int = 12) -> str:
    if fmt == "json":
        return to_json(payload)
    if fmt == "csv":
        return to_csv(payload, csv_digits)
    if fmt == "text":
        return to_text(payload)
    raise ParameterError(f"unknown output format {fmt!r}; expected one of {FORMATS}")


def verify_payload(results: List[Dict[str, Any]], meta: Dict[str, Any]) -> Dict[str, Any]:
    failed = sum(1 for r in results if not r["passed"])
    skipped = sum(1 for r in results if r.get("skipped"))
    payload = {"command": "verify"}
    payload.update(meta)
    payload["passed"] = failed == 0
    payload["summary"] = {"total": len(results), "passed": len(results) - failed,
                          "failed": failed, "skipped": skipped}
    payload["results"] = results
    return payload
