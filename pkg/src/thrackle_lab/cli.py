"""Command-line front end.

Exit codes: 0 success / all checks hold, 1 violation or not found,
2 input error, 3 search budget exhausted (inconclusive).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from collections import Counter
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .constructions import ConstructionError, gen_gk, gen_hk, gen_hk_embedding
from .discharging import (
    REMARK2,
    REMARK2_DECIMAL,
    RULESETS,
    THRACKLE,
    THRACKLE_DECIMAL,
    bound_from_min_charge,
    quasithrackle_theorem_bound,
    rational_json,
    run_discharge,
    run_quasithrackle_check,
    thrackle_theorem_bound,
)
from .embedding import SchemeError, face_report, parse_scheme
from .graph import (
    Graph,
    GraphFormatError,
    blocks,
    check_quasithrackle_axioms,
    check_six_cycle_conflicts,
    check_thrackle_axioms,
    girth,
    is_bipartite,
    is_connected,
    parse_graph,
    parse_inline_edges,
)
from .search import DEFAULT_BUDGET, Verdict, is_generalized_thrackle

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3

# larger instances make the exhaustive cross-check impractical
SEARCH_CROSSCHECK_MAX_EDGES = {"Hk": 42, "Gk": 12}


class InputError(Exception):
    pass


def _default_budget() -> int:
    raw = os.environ.get("THRACKLE_LAB_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"THRACKLE_LAB_BUDGET must be an integer, got {raw!r}") from None
    if value <= 0:
        raise InputError("THRACKLE_LAB_BUDGET must be positive")
    return value


def _read_graph(args) -> Graph:
    try:
        if getattr(args, "edges", None):
            return parse_inline_edges(args.edges)
        if not getattr(args, "graph", None):
            raise InputError("no graph given: pass a file path, '-' for stdin, or --edges")
        if args.graph == "-":
            return parse_graph(sys.stdin.read())
        with open(args.graph) as fh:
            return parse_graph(fh.read())
    except (OSError, GraphFormatError) as exc:
        raise InputError(str(exc)) from None


def _emit(payload: dict, fmt: str) -> None:
    doc = {"tool": "thrackle-lab", "version": __version__, **payload}
    if fmt == "json":
        print(json.dumps(doc, indent=2))
    else:
        _render_text(doc)


def _render_text(value, indent: int = 0) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        for key, item in value.items():
            if isinstance(item, (dict, list)) and item and not _flat(item):
                print(f"{pad}{key}:")
                _render_text(item, indent + 1)
            else:
                print(f"{pad}{key}: {_scalar(item)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)) and not _flat(item):
                print(f"{pad}-")
                _render_text(item, indent + 1)
            else:
                print(f"{pad}- {_scalar(item)}")
    else:
        print(f"{pad}{_scalar(value)}")


def _flat(item) -> bool:
    if isinstance(item, dict):
        return set(item) == {"num", "den", "str"}
    return all(not isinstance(x, (dict, list)) for x in item)


def _scalar(item) -> str:
    if isinstance(item, dict) and set(item) == {"num", "den", "str"}:
        return item["str"]
    if isinstance(item, list):
        return " ".join(str(x) for x in item)
    return str(item)


def _girth_json(g: Graph):
    value = girth(g)
    return "inf" if value == math.inf else int(value)


# ---------------------------------------------------------------------------
# subcommands


def cmd_analyze(args) -> int:
    g = _read_graph(args)
    bip, odd = is_bipartite(g)
    thrackle = check_thrackle_axioms(g)
    quasi = check_quasithrackle_axioms(g)
    _emit({
        "command": "analyze",
        "n": g.n,
        "m": g.m,
        "connected": is_connected(g),
        "bipartite": bip,
        "odd_cycle": None if odd is None else odd.to_json(),
        "girth": _girth_json(g),
        "blocks": blocks(g).to_json(),
        "thrackle_axioms": [r.to_json() for r in thrackle],
        "six_cycle_conflicts": len(check_six_cycle_conflicts(g)),
        "quasithrackle_axiom": quasi.to_json(),
    }, args.format)
    return EXIT_OK if all(r.holds for r in thrackle) else EXIT_FAIL


def cmd_embed(args) -> int:
    g = _read_graph(args)
    if not is_connected(g):
        raise InputError("embedding search needs a connected graph")
    decision = is_generalized_thrackle(g, budget=args.budget, pruned=not args.unpruned, jobs=args.jobs)
    payload = {"command": "embed", **decision.to_json()}
    if decision.outcome.witness is not None:
        payload["summary"] = face_report(g, decision.outcome.witness)
    _emit(payload, args.format)
    if decision.outcome.verdict is Verdict.BUDGET:
        return EXIT_INCONCLUSIVE
    return EXIT_OK if decision.answer else EXIT_FAIL


def cmd_discharge(args) -> int:
    g = _read_graph(args)
    if not args.scheme:
        raise InputError("--scheme is required")
    try:
        with open(args.scheme) as fh:
            scheme = parse_scheme(fh.read())
        scheme.validate(g)
    except (OSError, SchemeError) as exc:
        raise InputError(str(exc)) from None
    if not is_connected(g):
        raise InputError("discharging needs a connected graph")
    if args.ruleset == "quasi-thrackle":
        report = run_quasithrackle_check(g, scheme)
    else:
        rules = RULESETS[args.ruleset]
        if rules.conditional and not args.conditional:
            raise InputError(f"rule set {rules.name!r} is {rules.conditional}; pass --conditional to run it")
        report = run_discharge(g, scheme, rules)
    _emit({"command": "discharge", **report.to_json()}, args.format)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_bound(args) -> int:
    n = args.n
    if args.ruleset == "thrackle":
        if n <= 3:
            raise InputError("the thrackle bound needs n > 3")
        form = bound_from_min_charge(THRACKLE.claimed_min, args.mode)
        bound = thrackle_theorem_bound(n) if args.mode == "projective" else form.evaluate(n) + 1
        payload = {
            "bound": rational_json(bound),
            "decimal": f"{float(bound):.4f}",
            "composition": f"({form.coefficient}) * ({n} - {form.offset}) + 1",
            "reference": rational_json(THRACKLE_DECIMAL * n),
            "below_reference": bound < THRACKLE_DECIMAL * n,
            "coefficient": rational_json(form.coefficient),
            "coefficient_below_1.3984": form.coefficient <= THRACKLE_DECIMAL,
        }
    elif args.ruleset == "quasi":
        if n < 1:
            raise InputError("n must be positive")
        form = bound_from_min_charge(6, args.mode)
        payload = {
            "bound": quasithrackle_theorem_bound(n) if args.mode == "projective" else math.floor(form.evaluate(n)),
            "exact": rational_json(form.evaluate(n)),
            "coefficient": rational_json(form.coefficient),
            "form": str(form),
        }
    else:
        if n < 2:
            raise InputError("n must be at least 2")
        form = bound_from_min_charge(REMARK2.claimed_min, args.mode)
        value = form.evaluate(n)
        payload = {
            "bound": rational_json(value),
            "decimal": f"{float(value):.4f}",
            "coefficient": rational_json(form.coefficient),
            "coefficient_below_1.3847": form.coefficient <= REMARK2_DECIMAL,
            "form": str(form),
            "note": REMARK2.conditional,
        }
    _emit({"command": "bound", "ruleset": args.ruleset, "mode": args.mode, "n": n, **payload}, args.format)
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.k < 1:
        raise InputError("--k must be at least 1")
    payload = {"command": "gen", "family": args.family, "k": args.k}
    try:
        if args.family == "Gk":
            g = gen_gk(args.k)
        else:
            g = gen_hk(args.k, verify=args.verify)
            payload["scheme"] = gen_hk_embedding(args.k, verify=args.verify).to_json()
    except ConstructionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    payload["graph"] = g.to_json()
    if args.verify:
        claims = _certify_claims(args.family, args.k, args.budget, search=False)
        payload["verification"] = claims
        if not all(c["status"] != "fail" for c in claims):
            _emit(payload, args.format)
            return EXIT_FAIL
    _emit(payload, args.format)
    return EXIT_OK


def _claim(name: str, ok: bool, detail="") -> dict:
    return {"claim": name, "status": "pass" if ok else "fail", "detail": str(detail)}


def _certify_claims(family: str, k: int, budget: int, search: bool = True) -> list[dict]:
    claims = []
    if family == "Gk":
        g = gen_gk(k)
        dec = blocks(g)
        claims.append(_claim("vertices = 2k+1", g.n == 2 * k + 1, g.n))
        claims.append(_claim("edges = floor(3/2 (n-1)) = 3k", g.m == quasithrackle_theorem_bound(g.n) == 3 * k, g.m))
        claims.append(_claim("k triangle blocks", len(dec.blocks) == k and all(len(b) == 3 for b in dec.blocks),
                             len(dec.blocks)))
        claims.append(_claim("single hub cut vertex", dec.cut_vertices == ((0,) if k > 1 else ()),
                             list(dec.cut_vertices)))
        claims.append(_claim("no 4-cycle (quasi-thrackle axiom)", check_quasithrackle_axioms(g).holds))
        tri = check_thrackle_axioms(g)[0]
        claims.append(_claim("not a thrackle for k > 1 (two triangles)", tri.holds == (k == 1)))
        if search and g.m <= SEARCH_CROSSCHECK_MAX_EDGES["Gk"]:
            d = is_generalized_thrackle(g, budget=budget)
            claims.append(_claim("projective parity embedding found by search", d.answer is True,
                                 d.outcome.verdict.value))
        return claims

    g = gen_hk(k, verify=False)
    degs = Counter(g.degrees())
    claims.append(_claim("vertices = 16k", g.n == 16 * k, g.n))
    claims.append(_claim("edges = 22k-2", g.m == 22 * k - 2, g.m))
    claims.append(_claim("degree-3 vertices = 12k-4", degs[3] == 12 * k - 4, degs[3]))
    claims.append(_claim("degree-2 vertices = 4k+4", degs[2] == 4 * k + 4, degs[2]))
    claims.append(_claim("handshake 3(12k-4) + 2(4k+4) = 2(22k-2)",
                         3 * degs[3] + 2 * degs[2] == 2 * g.m == 2 * (22 * k - 2)))
    conflicts = check_six_cycle_conflicts(g)
    claims.append(_claim("no two 6-cycles share a vertex or are joined by an edge", not conflicts, len(conflicts)))
    claims.append(_claim("thrackle axioms hold", all(r.holds for r in check_thrackle_axioms(g))))
    try:
        scheme = gen_hk_embedding(k)
        ok, detail = True, "parity embedding, Euler genus 1, non-orientable, faces even, 6-cycles facial"
    except ConstructionError as exc:
        scheme, ok, detail = None, False, exc
    claims.append(_claim("parity embedding in the projective plane", ok, detail))
    if scheme is not None:
        report = run_discharge(g, scheme, THRACKLE)
        claims.append(_claim("discharging min final charge >= 337/48", report.ok, report.min_final_charge))
    if search and g.m <= SEARCH_CROSSCHECK_MAX_EDGES["Hk"]:
        d = is_generalized_thrackle(g, budget=budget)
        claims.append(_claim("projective parity embedding found by search", d.answer is True,
                             d.outcome.verdict.value))
    ratio = Fraction(g.m, g.n)
    claims.append(_claim("e/n < 11/8", ratio < Fraction(11, 8), ratio))
    claims.append({"claim": "girth", "status": "info", "detail": _girth_json(g)})
    return claims


def cmd_certify(args) -> int:
    if args.k < 1:
        raise InputError("--k must be at least 1")
    try:
        claims = _certify_claims(args.family, args.k, args.budget, search=not args.no_search)
    except ConstructionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    ok = all(c["status"] != "fail" for c in claims)
    _emit({"command": "certify", "family": args.family, "k": args.k, "claims": claims, "all_pass": ok},
          args.format)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--budget", type=int, default=None, help="maximum schemes visited by a search")
    common.add_argument("--jobs", type=int, default=1, help="parallel search workers")

    graph_in = argparse.ArgumentParser(add_help=False)
    graph_in.add_argument("graph", nargs="?", help="graph file (JSON or edge list), '-' for stdin")
    graph_in.add_argument("--edges", help="inline graph, e.g. '0-1,1-2,2-0'")

    parser = argparse.ArgumentParser(prog="thrackle-lab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common, graph_in], help="structural predicates and axioms")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("embed", parents=[common, graph_in], help="generalized-thrackle decision by search")
    p.add_argument("--unpruned", action="store_true", help="disable symmetry pruning")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("discharge", parents=[common, graph_in], help="run a discharging rule set")
    p.add_argument("--scheme", help="scheme JSON file")
    p.add_argument("--ruleset", default="thrackle", choices=sorted(RULESETS) + ["quasi-thrackle"])
    p.add_argument("--conditional", action="store_true", help="allow rule sets with unverified premises")
    p.set_defaults(func=cmd_discharge)

    p = sub.add_parser("bound", parents=[common], help="edge bounds as exact rationals")
    p.add_argument("--ruleset", default="thrackle", choices=("thrackle", "quasi", "remark2"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", default="projective", choices=("projective", "plane"))
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("gen", parents=[common], help="generate G(k) or H(k)")
    p.add_argument("--family", default="Hk", choices=("Gk", "Hk"))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--verify", action="store_true", help="run the construction contract first")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("certify", parents=[common], help="check every claim about G(k) or H(k)")
    p.add_argument("--family", default="Hk", choices=("Gk", "Hk"))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--no-search", action="store_true", help="skip the exhaustive search cross-check")
    p.set_defaults(func=cmd_certify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if args.budget is None:
            args.budget = _default_budget()
        if args.budget <= 0 or args.jobs <= 0:
            raise InputError("--budget and --jobs must be positive")
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
