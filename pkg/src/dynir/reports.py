"""Report rendering: deterministic JSON, versioned CSV, DOT portraits.

Identical inputs and seed produce byte-identical output; nothing here
depends on wall-clock time or iteration order of unordered containers.
"""

from __future__ import annotations

import json

from .cubic import RecursiveReport
from .ffield import FieldElem
from .polyring import Poly, factor, lift_poly, roots_in_field, to_string
from .unicritical import OrbitReport, Verdict

CSV_SCHEMA = "dynir.csv.v1"
JSON_SCHEMA = "dynir.report.v1"


def render_value(v):
    """JSON-able form of report values (field elements become their
    reduced coefficient vectors, plain ints at the prime level)."""
    if isinstance(v, FieldElem):
        return v.vector()
    if isinstance(v, Poly):
        return to_string(v)
    if isinstance(v, Verdict):
        return verdict_to_json(v)
    if isinstance(v, dict):
        return {str(k): render_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, set, frozenset)):
        items = [render_value(x) for x in v]
        if isinstance(v, (set, frozenset)):
            items.sort(key=repr)
        return items
    if isinstance(v, (int, str, bool)) or v is None:
        return v
    return repr(v)


def verdict_to_json(v: Verdict) -> dict:
    return {
        "kind": v.kind.value,
        "iterate": v.iterate,
        "reason": v.reason,
        "details": {k: render_value(x) for k, x in sorted(v.details.items())},
    }


def orbit_report_to_json(rep: OrbitReport) -> dict:
    return {
        "seed": render_value(rep.seed),
        "tail": [render_value(e) for e in rep.tail],
        "cycle": [render_value(e) for e in rep.cycle],
        "adjusted_values": [
            {
                "n": n,
                "value": render_value(v),
                "tests": {str(r): {"is_rth_power": rv.is_rth_power,
                                   "witness": render_value(rv.witness)}
                          for r, rv in sorted(checks.items())},
            }
            for n, v, checks in rep.adjusted_values
        ],
        "verdict": verdict_to_json(rep.verdict),
    }


def recursive_report_to_json(rep: RecursiveReport) -> dict:
    levels = []
    for st in rep.levels:
        levels.append({
            "n": st.n,
            "iterate_gated": st.n + 1,
            "cond1_value": render_value(st.cond1_value),
            "cond1_square": True,
            "mu_branch": render_value(st.mu_n),
            "cond2_norm": render_value(st.cond2_norm),
            "cond2_norm_alt": render_value(st.cond2_norm_alt),
            "cond2_cube": st.cond2_is_cube,
            "oracle_irreducible": st.oracle_irreducible,
        })
    cond1 = None
    if rep.cond1 is not None:
        cond1 = {
            "values": [render_value(v) for v in rep.cond1.values],
            "all_square": rep.cond1.all_square,
            "decided_for_all_n": rep.cond1.decided_for_all_n,
            "first_failure": rep.cond1.first_failure,
            "periodic_certificate": rep.cond1.periodic_certificate,
        }
    return {
        "levels": levels,
        "cond1": cond1,
        "verdict": verdict_to_json(rep.verdict),
    }


def dumps(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2,
                      separators=(",", ": ")) + "\n"


def csv_lines(table_id: str, seed, columns: list[str],
              rows: list[list]) -> str:
    out = [f"# {CSV_SCHEMA} table={table_id} seed={seed}"]
    out.append(",".join(columns))
    for row in rows:
        out.append(",".join(_csv_cell(c) for c in row))
    return "\n".join(out) + "\n"


def _csv_cell(c) -> str:
    s = str(render_value(c))
    if "," in s or '"' in s:
        s = '"' + s.replace('"', '""') + '"'
    return s


# ---------------------------------------------------------------------------
# critical portraits
# ---------------------------------------------------------------------------

def critical_points(f: Poly):
    """All critical points of f, found in an extension when needed.

    Returns (field, level, points); the field is extended by nonlinear
    irreducible factors of f' until the derivative splits.
    """
    fp = f.derivative()
    if fp.degree < 1:
        return f.field, f.level, []
    ext, lvl = f.field, f.level
    g = fp
    while True:
        facs = factor(g)
        nonlinear = [p for p, _ in facs.factors if p.degree > 1]
        if not nonlinear:
            return ext, lvl, sorted(set(roots_in_field(g)),
                                    key=FieldElem.lex_key)
        ext = extend_by(ext, nonlinear[0])
        lvl = ext.top
        g = lift_poly(fp, ext, lvl)


def extend_by(field, poly: Poly):
    from .ffield import extend_field
    return extend_field(field, poly.monic()._lst(), verify=False)


def portrait_edges(f: Poly):
    """Directed edges of the forward orbits of the critical points."""
    ext, lvl, pts = critical_points(f)
    fe = lift_poly(f, ext, lvl)
    nodes: list[FieldElem] = []
    edges: list[tuple[FieldElem, FieldElem]] = []
    seen = set()
    for start in pts:
        t = start
        if t not in nodes:
            nodes.append(t)
        while True:
            nxt = fe(t)
            if nxt not in nodes:
                nodes.append(nxt)
            e = (t, nxt)
            if e in seen:
                break
            seen.add(e)
            edges.append(e)
            t = nxt
    return nodes, edges


def dot_portrait(f: Poly, label: str = "f") -> str:
    """Critical portrait as a DOT digraph: nodes are orbit values, edges
    are one application of the map."""
    nodes, edges = portrait_edges(f)
    def name(e: FieldElem) -> str:
        return json.dumps(str(render_value(e)))
    lines = ["digraph critical_portrait {"]
    for nd in nodes:
        lines.append(f"  {name(nd)};")
    for a, b in edges:
        lines.append(f"  {name(a)} -> {name(b)} [label=\"{label}\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"
