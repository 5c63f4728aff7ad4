"""Command-line surface.

Subcommands:

  test               verdict for one polynomial with the evidence chain
  reproduce          regenerate the bundled survey tables (1 or 2)
  search             sweep a parameter family and report survivors
  verify-linearized  exhaustive second/third-iterate reducibility sweep

Exit codes for `test`: 0 proved dynamically irreducible, 1 reducible,
2 inconclusive (bounded), 3 usage error.  The environment variable
DYNIR_SEED overrides --seed.  Reports are deterministic for a fixed
config and seed.
"""

from __future__ import annotations

import argparse
import functools
import itertools
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import cubic as _cubic
from . import linearized as _lin
from . import reports
from . import unicritical as _uni
from .errors import (
    CharacteristicDividesDegree,
    DynirError,
    UnknownFamily,
)
from .ffield import FieldDesc, build_field
from .polyring import Poly, from_string, is_irreducible, iterate, to_string
from .unicritical import Verdict, VerdictKind

_EXIT = {
    VerdictKind.PROVED_DYNAMICALLY_IRREDUCIBLE: 0,
    VerdictKind.REDUCIBLE_AT_ITERATE: 1,
    VerdictKind.IRREDUCIBLE_THROUGH: 2,
}


@dataclass
class RunConfig:
    """Run parameters recorded in every emitted report."""

    command: str
    p: int
    s: int
    poly: str | None = None
    beta: str | None = None
    nmax: int = 10
    oracle_max: int = 5
    jobs: int = 1
    seed: int = 0
    format: str = "text"
    out: str | None = None
    table: int | None = None
    family: str | None = None
    degree: int = 3
    kmax: int = 3

    def to_json(self) -> dict:
        return {
            "command": self.command, "p": self.p, "s": self.s,
            "poly": self.poly, "beta": self.beta, "nmax": self.nmax,
            "oracle_max": self.oracle_max, "jobs": self.jobs,
            "seed": self.seed, "table": self.table, "family": self.family,
            "degree": self.degree,
        }


@functools.lru_cache(maxsize=None)
def _field(p: int, s: int) -> FieldDesc:
    return build_field(p, [s])


def _emit(text: str, cfg: RunConfig):
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report(cfg: RunConfig, payload: dict) -> dict:
    return {"schema": reports.JSON_SCHEMA, "config": cfg.to_json(), **payload}


# ---------------------------------------------------------------------------
# test
# ---------------------------------------------------------------------------

def _is_chu_shape(h: _cubic.DepressedCubic) -> bool:
    field, level = h.field, h.level
    return (h.b3 == field.one(level)
            and h.b1 == field.elem(-3, level)
            and h.b0.is_zero())


def cmd_test(cfg: RunConfig) -> int:
    field = _field(cfg.p, cfg.s)
    f = from_string(cfg.poly, field)
    if f.degree < 2:
        raise DynirError("test needs a polynomial of degree >= 2")
    route, verdict, evidence = _dispatch(f, cfg, field)
    payload = _report(cfg, {
        "command": "test",
        "polynomial": to_string(f),
        "route": route,
        "verdict": reports.verdict_to_json(verdict),
        "evidence": evidence,
    })
    if cfg.format == "json":
        _emit(reports.dumps(payload), cfg)
    elif cfg.format == "dot":
        _emit(reports.dot_portrait(f), cfg)
    else:
        _emit(_test_text(payload), cfg)
    return _EXIT[verdict.kind]


def _dispatch(f: Poly, cfg: RunConfig, field: FieldDesc):
    # shifted linearized shape first: its derivative is constant, so no
    # other route applies
    if _lin.matches_shape(f):
        sl = _lin.from_poly(f)
        verdict = _lin.linearized_verdict(sl, oracle=(cfg.p ** 2 <= 128))
        witness = _lin.cohen_test(sl).witness
        return "linearized", verdict, {
            "cohen_A": reports.render_value(witness.A),
            "cohen_trace": reports.render_value(witness.trace_value),
        }
    if f.degree % field.p != 0:
        result = _uni.unicritical_verdict(f)
        if result is not None:
            form, orbit = result
            return "unicritical", orbit.verdict, {
                "gamma": reports.render_value(form.gamma),
                "centered": to_string(form.centered),
                "pair_target": reports.render_value(form.beta),
                "orbit": reports.orbit_report_to_json(orbit),
            }
    if f.degree == 3 and field.p > 3:
        h = _cubic.depress(f)
        if cfg.beta is not None:
            h = _cubic.DepressedCubic(h.b3, h.b1, h.b0,
                                      field.elem(int(cfg.beta)), h.source)
        if _is_chu_shape(h):
            verdict = _cubic.chu_test(h.beta0, field)
            return "cubic-tower-family", verdict, {
                "alpha": reports.render_value(h.beta0),
            }
        rep = _cubic.recursive_test(h, n_max=cfg.nmax,
                                    oracle_max_level=cfg.oracle_max)
        gnos = _cubic.gnos_check(f, n_max=min(cfg.nmax, 6))
        ev = reports.recursive_report_to_json(rep)
        ev["depressed"] = to_string(h.poly())
        ev["pair_target"] = reports.render_value(h.beta0)
        ev["parity_check"] = {"passed": gnos.passed,
                              "first_violation": gnos.first_violation}
        return "cubic-recursive", rep.verdict, ev
    # oracle fallback: bounded factorization scan
    for n in range(1, cfg.nmax + 1):
        if not is_irreducible(iterate(f, n)):
            v = Verdict.reducible_at(n, "oracle-factor")
            return "oracle", v, {"checked_through": n}
    v = Verdict.through(cfg.nmax, "bound-reached")
    return "oracle", v, {"checked_through": cfg.nmax}


def _test_text(payload: dict) -> str:
    v = payload["verdict"]
    lines = [
        f"polynomial: {payload['polynomial']}",
        f"route: {payload['route']}",
        f"verdict: {v['kind']}"
        + (f" (iterate {v['iterate']})" if v["iterate"] else ""),
        f"reason: {v['reason']}",
    ]
    ev = payload["evidence"]
    if "orbit" in ev:
        orb = ev["orbit"]
        lines.append(f"critical point: {ev['gamma']}")
        lines.append(f"orbit tail: {orb['tail']}  cycle: {orb['cycle']}")
        lines.append("adjusted values: "
                     + ", ".join(f"n={a['n']}: {a['value']}"
                                 for a in orb["adjusted_values"]))
    if "cond1" in ev and ev["cond1"]:
        lines.append(f"square sequence: {ev['cond1']['values']}"
                     + (" (periodic, decided for all n)"
                        if ev["cond1"]["decided_for_all_n"] else ""))
        norms = [lv["cond2_norm"] for lv in ev.get("levels", [])]
        lines.append(f"cube-test norms by level: {norms}")
    if "cohen_A" in ev:
        lines.append(f"cohen witness A: {ev['cohen_A']}, "
                     f"trace: {ev['cohen_trace']}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# reproduce
# ---------------------------------------------------------------------------

def cmd_reproduce(cfg: RunConfig) -> int:
    if cfg.table == 1:
        rows = _table1_rows(cfg)
        columns = ["polynomial", "adjusted_critical_orbit"]
        table_id = "unicritical-cubics-F7"
    elif cfg.table == 2:
        rows = _table2_rows(cfg)
        columns = ["polynomial", "min_reducible_iterate"]
        table_id = "cubic-iterate-bounds-F3"
    else:
        raise DynirError(f"unknown table {cfg.table}")
    if cfg.format == "json":
        payload = _report(cfg, {
            "command": "reproduce", "table": cfg.table,
            "columns": columns,
            "rows": [[reports.render_value(c) for c in r] for r in rows],
        })
        _emit(reports.dumps(payload), cfg)
    elif cfg.format == "csv":
        _emit(reports.csv_lines(table_id, cfg.seed, columns, rows), cfg)
    else:
        width = max(len(str(r[0])) for r in rows) + 2
        text = "\n".join(f"{str(r[0]):<{width}}{r[1]}" for r in rows)
        _emit(text + "\n", cfg)
    return 0


def _table1_rows(cfg: RunConfig):
    field = _field(7, 1)
    rows = []
    for a, c in itertools.product(range(1, 7), repeat=2):
        f = Poly(field, [c, 0, 0, a])
        _, rep = _uni.unicritical_verdict(f)
        if rep.verdict.is_proved:
            orbit = sorted({v.vector() for _, v, _ in rep.adjusted_values})
            rows.append([to_string(f), "{" + ",".join(map(str, orbit)) + "}"])
    return rows


def _table2_rows(cfg: RunConfig):
    field = _field(3, 1)
    rows = []
    for a3, a2, a1, a0 in itertools.product((1, 2), (0, 1, 2), (0, 1, 2),
                                            (0, 1, 2)):
        f = Poly(field, [a0, a1, a2, a3])
        n = _min_reducible_iterate(f, 5)
        assert n is not None and n <= 4, "a cubic over F_3 survived iterate 4"
        if n >= 2:
            rows.append([to_string(f), n])
    return rows


def _min_reducible_iterate(f: Poly, bound: int) -> int | None:
    g = f
    for n in range(1, bound + 1):
        if not is_irreducible(g):
            return n
        if n < bound:
            from .polyring import compose
            g = compose(f, g)
    return None


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------

def cmd_search(cfg: RunConfig) -> int:
    if cfg.family == "unicritical":
        survivors, histogram = _search_grid(
            _search_one_unicritical, _unicritical_grid(cfg), cfg)
    elif cfg.family == "depressed":
        survivors, histogram = _search_grid(
            _search_one_depressed, _depressed_grid(cfg), cfg)
    elif cfg.family == "chu":
        survivors, histogram = _search_grid(
            _search_one_chu, _chu_grid(cfg), cfg)
    elif cfg.family == "linearized":
        survivors, histogram = _search_grid(
            _search_one_linearized, _linearized_grid(cfg), cfg)
    else:
        raise UnknownFamily(f"unknown family {cfg.family!r}")
    payload = _report(cfg, {
        "command": "search",
        "family": cfg.family,
        "survivors": survivors,
        "refutation_histogram": {str(k): v
                                 for k, v in sorted(histogram.items())},
    })
    if cfg.format == "json":
        _emit(reports.dumps(payload), cfg)
    elif cfg.format == "csv":
        rows = [[s["polynomial"], s["kind"]] for s in survivors]
        _emit(reports.csv_lines(f"search-{cfg.family}", cfg.seed,
                                ["polynomial", "kind"], rows), cfg)
    else:
        lines = [f"family: {cfg.family}",
                 f"survivors ({len(survivors)}):"]
        lines += [f"  {s['polynomial']}  [{s['kind']}]" for s in survivors]
        lines.append(f"refutation histogram: "
                     f"{dict(sorted(histogram.items()))}")
        _emit("\n".join(lines) + "\n", cfg)
    return 0


def _search_grid(worker, grid, cfg: RunConfig):
    results = _pmap(worker, list(grid), cfg.jobs)
    survivors = []
    histogram: dict[int, int] = {}
    for poly_s, kind, iterate_n in results:
        if kind in ("proved-dynamically-irreducible", "irreducible-through"):
            survivors.append({"polynomial": poly_s, "kind": kind})
        else:
            histogram[iterate_n] = histogram.get(iterate_n, 0) + 1
    return survivors, histogram


def _pmap(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def _unicritical_grid(cfg: RunConfig):
    q = cfg.p ** cfg.s
    for a_idx in range(1, q):
        for c_idx in range(1, q):
            yield (cfg.p, cfg.s, cfg.degree, a_idx, c_idx)


def _search_one_unicritical(args):
    p, s, d, a_idx, c_idx = args
    field = _field(p, s)
    a = field.from_index(a_idx)
    c = field.from_index(c_idx)
    h = Poly(field, [c] + [0] * (d - 1) + [a])
    hyp = _uni.hypothesis_check(d, field)
    if not hyp.ok:
        return to_string(h), "reducible-at-iterate", 1
    v = _uni.pair_test(h, 0)
    return to_string(h), v.kind.value, v.iterate


def _depressed_grid(cfg: RunConfig):
    q = cfg.p ** cfg.s
    for b1 in range(q):
        for b0 in range(q):
            yield (cfg.p, cfg.s, b1, b0, cfg.nmax)


def _search_one_depressed(args):
    """Oracle scan: ground-truth refutation by factoring iterates."""
    p, s, b1_idx, b0_idx, nmax = args
    field = _field(p, s)
    f = Poly(field, [field.from_index(b0_idx), field.from_index(b1_idx), 0, 1])
    n = _min_reducible_iterate(f, nmax)
    if n is None:
        return to_string(f), "irreducible-through", nmax
    return to_string(f), "reducible-at-iterate", n


def _chu_grid(cfg: RunConfig):
    q = cfg.p ** cfg.s
    for a_idx in range(q):
        yield (cfg.p, cfg.s, a_idx)


def _search_one_chu(args):
    p, s, a_idx = args
    field = _field(p, s)
    alpha = field.from_index(a_idx)
    v = _cubic.chu_test(alpha, field)
    return to_string(_cubic.chu_polynomial(alpha, field)), v.kind.value, v.iterate


def _linearized_grid(cfg: RunConfig):
    q = cfg.p ** cfg.s
    for ap in range(1, q):
        for a1 in range(1, q):
            for a0 in range(q):
                yield (cfg.p, cfg.s, ap, a1, a0)


def _search_one_linearized(args):
    p, s, ap_idx, a1_idx, a0_idx = args
    field = _field(p, s)
    sl = _lin.ShiftedLinearized(field.from_index(ap_idx),
                                field.from_index(a1_idx),
                                field.from_index(a0_idx))
    v = _lin.linearized_verdict(sl)
    return to_string(sl.poly()), v.kind.value, v.iterate


# ---------------------------------------------------------------------------
# verify-linearized
# ---------------------------------------------------------------------------

def cmd_verify_linearized(cfg: RunConfig) -> int:
    field = _field(cfg.p, cfg.s)
    rep = _lin.verify_theorem52(field, seed=cfg.seed)
    payload = _report(cfg, {"command": "verify-linearized", **rep})
    if cfg.format == "json":
        _emit(reports.dumps(payload), cfg)
    else:
        lines = [f"field: GF({cfg.p}^{cfg.s})",
                 f"triples checked: {rep['total']}"
                 + ("" if rep["exhaustive"] else " (sampled)"),
                 f"second iterate reducible: {rep['reducible_at_2']}"]
        if rep["reducible_at_3"] is not None:
            lines.append(f"third iterate reducible: {rep['reducible_at_3']}")
        lines.append(f"counterexamples: {rep['counterexamples']}")
        _emit("\n".join(lines) + "\n", cfg)
    return 0 if not rep["counterexamples"] else 1


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dynir",
        description="dynamical irreducibility of polynomials over finite fields")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, poly=False):
        sp.add_argument("--p", type=int, required=True, help="characteristic")
        sp.add_argument("--s", type=int, default=1,
                        help="base field extension degree (q = p^s)")
        if poly:
            sp.add_argument("--poly", type=str, required=True,
                            help='polynomial, e.g. "x^3+6x+2"')
            sp.add_argument("--beta", type=str, default=None,
                            help="pair target for (h, beta) testing")
        sp.add_argument("--nmax", type=int, default=10)
        sp.add_argument("--oracle-max", dest="oracle_max", type=int, default=5)
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--format", choices=("text", "json", "csv", "dot"),
                        default="text")
        sp.add_argument("--out", type=str, default=None)

    sp_test = sub.add_parser("test", help="verdict for one polynomial")
    common(sp_test, poly=True)

    sp_rep = sub.add_parser("reproduce", help="regenerate a survey table")
    sp_rep.add_argument("--table", type=int, required=True, choices=(1, 2))
    sp_rep.add_argument("--seed", type=int, default=0)
    sp_rep.add_argument("--format", choices=("text", "json", "csv"),
                        default="text")
    sp_rep.add_argument("--out", type=str, default=None)

    sp_search = sub.add_parser("search", help="sweep a parameter family")
    common(sp_search)
    sp_search.add_argument("--family", required=True,
                           choices=("unicritical", "depressed", "chu",
                                    "linearized"))
    sp_search.add_argument("--degree", type=int, default=3,
                           help="degree d for the unicritical family")

    sp_ver = sub.add_parser("verify-linearized",
                            help="second/third iterate reducibility sweep")
    common(sp_ver)
    return ap


def _config_from_args(args) -> RunConfig:
    seed = args.seed if hasattr(args, "seed") else 0
    env_seed = os.environ.get("DYNIR_SEED")
    if env_seed is not None:
        seed = int(env_seed)
    return RunConfig(
        command=args.command,
        p=getattr(args, "p", 0),
        s=getattr(args, "s", 1),
        poly=getattr(args, "poly", None),
        beta=getattr(args, "beta", None),
        nmax=getattr(args, "nmax", 10),
        oracle_max=getattr(args, "oracle_max", 5),
        jobs=getattr(args, "jobs", 1),
        seed=seed,
        format=getattr(args, "format", "text"),
        out=getattr(args, "out", None),
        table=getattr(args, "table", None),
        family=getattr(args, "family", None),
        degree=getattr(args, "degree", 3),
    )


def main(argv: list[str] | None = None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 3 if exc.code not in (0, None) else 0
    cfg = _config_from_args(args)
    try:
        if args.command == "test":
            return cmd_test(cfg)
        if args.command == "reproduce":
            return cmd_reproduce(cfg)
        if args.command == "search":
            return cmd_search(cfg)
        if args.command == "verify-linearized":
            return cmd_verify_linearized(cfg)
        raise DynirError(f"unknown command {args.command!r}")
    except (DynirError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
