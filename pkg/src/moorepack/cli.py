"""Command-line interface.

Exit codes: 0 valid / found, 1 invalid / infeasible, 2 parse or usage
error, 3 budget exhausted.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bounds, coloring, generators, geometry, io, solver
from .errors import (BudgetExceeded, EvenCharacteristic, FileFormatError, Infeasible, MoorePackError,
                     NotAnOvoid, NotApplicable, NotPrimePower, UnknownName)
from .report import _jsonable

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_BUDGET = 0, 1, 2, 3


def _emit(args, payload: dict, text: str | None = None):
    if args.json:
        print(json.dumps(_jsonable(payload), indent=2, ensure_ascii=False))
    else:
        print(text if text is not None else _plain(payload))


def _plain(payload: dict, indent: str = "") -> str:
    lines = []
    for k, v in payload.items():
        if isinstance(v, dict):
            lines.append(f"{indent}{k}:")
            lines.append(_plain(v, indent + "  "))
        elif isinstance(v, list) and len(v) > 16:
            lines.append(f"{indent}{k}: [{len(v)} items]")
        else:
            lines.append(f"{indent}{k}: {v}")
    return "\n".join(lines)


def _write(path, text: str):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


# -- commands --------------------------------------------------------------

def cmd_gen(args) -> int:
    fam = args.family
    if fam == "pg":
        g = generators.gen_pg_incidence(_need(args.q, "--q"))
    elif fam == "gq":
        g = generators.gen_gq_incidence(_need(args.q, "--q"))
    elif fam == "cage312":
        g = generators.gen_cage_3_12()
    else:
        g = generators.gen_classical(_need(args.name, "--name"), *args.params)
    text = io.dumps_graph(g)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        _write(args.out, text)
        _emit(args, {"written": args.out, "n": g.n, "edges": g.num_edges, "meta": g.meta})
    return EXIT_OK


def _need(value, flag):
    if value is None:
        raise NotApplicable(f"{flag} is required for this family")
    return value


def cmd_verify(args) -> int:
    g = io.load_graph(args.graph)
    c = io.load_coloring(args.coloring, g.n)
    rep = coloring.verify_coloring(g, c)
    payload = {"valid": rep.ok, **rep.to_dict()}
    _emit(args, payload, str(rep) + f"\ncolors used: k={c.k}")
    return EXIT_OK if rep.ok else EXIT_INVALID


def _parse_prune(text):
    if text is None:
        return solver.DEFAULT_PRUNE
    if text.strip().lower() in ("", "none"):
        return frozenset()
    return frozenset(p.strip() for p in text.split(",") if p.strip())


def cmd_solve(args) -> int:
    g = io.load_graph(args.graph)
    try:
        cfg = solver.SearchConfig(max_color=args.max_colors, vertex_order=args.order, prune=_parse_prune(args.prune),
                                  time_budget=args.budget_s, node_budget=args.node_budget, threads=args.threads)
    except ValueError as exc:
        raise NotApplicable(str(exc)) from exc
    try:
        if args.exact:
            res = solver.solve_exact(g, cfg)
            witness, payload = res.witness, {"result": "exact", "value": res.value, "stats": res.stats}
        else:
            witness = solver.solve_upper(g, cfg)
            payload = {"result": "found", "k": witness.k, "stats": witness.meta["stats"]}
    except Infeasible as exc:
        _emit(args, {"result": "infeasible", "message": str(exc), "stats": getattr(exc, "stats", {})})
        return EXIT_INVALID
    except BudgetExceeded as exc:
        payload = {"result": "budget", "message": str(exc), "stats": getattr(exc, "stats", {})}
        best = exc.best
        if isinstance(best, solver.ExactResult):
            payload["bracket"] = [best.lower, best.upper]
            if args.out:
                _write(args.out, io.dumps_coloring(best.witness))
        elif isinstance(best, tuple):
            payload["bracket"] = list(best)
        _emit(args, payload)
        return EXIT_BUDGET
    if args.out:
        _write(args.out, io.dumps_coloring(witness))
    payload["valid"] = coloring.verify_coloring(g, witness).ok
    _emit(args, payload)
    return EXIT_OK


def cmd_ovoid(args) -> int:
    g = io.load_graph(args.graph)
    if args.construct is not None:
        twist = tuple(int(x) for x in args.twist.split(",")) if args.twist else None
        try:
            ov = geometry.construct_gq_ovoid(g, args.construct, twist=twist)
        except (EvenCharacteristic, NotAnOvoid) as exc:
            _emit(args, {"result": "refused", "message": str(exc)})
            return EXIT_INVALID
        verts = list(ov.vertices)
        gi = 8
    else:
        q, gi = geometry.moore_parameters(g)
        target = args.search if args.search > 0 else None
        try:
            found = geometry.search_opposite_set(g, args.side, target=target, budget=args.budget, girth_value=gi)
        except BudgetExceeded as exc:
            _emit(args, {"result": "budget", "best_size": len(exc.best or []), "message": str(exc)})
            return EXIT_BUDGET
        verts = found.vertices
        if target is not None and len(verts) < target:
            _emit(args, {"result": "not found", "size": len(verts), "target": target,
                         "proven_maximum": found.proven_maximum})
            return EXIT_INVALID
    rep = geometry.verify_ovoid(g, verts, girth_value=gi)
    if args.out:
        _write(args.out, io.ovoid_to_json(g, verts))
    labels = [str(g.labels[v]) if g.labels is not None else v for v in verts]
    _emit(args, {"result": "ok", "size": len(verts), "labels": labels, "ovoid": rep.to_dict()},
          f"{len(verts)} vertices: {' '.join(map(str, labels))}\n{rep}")
    return EXIT_OK


def _entries(rep: bounds.BoundReport) -> list[dict]:
    return [e.to_dict() for e in rep.entries]


def cmd_bounds(args) -> int:
    payload = {"q": args.q, "g": args.g, "n": bounds.moore_bound(args.q + 1, args.g)}
    br = bounds.bracket(args.q, args.g)
    payload["bracket"] = _entries(br)
    if args.g in (8, 12):
        payload["class_caps"] = _entries(bounds.class_caps(args.q, args.g))
    if args.json:
        _emit(args, payload)
    else:
        lines = [f"(q+1,g) = ({args.q + 1},{args.g})  n = {payload['n']}"]
        for sect in ("bracket", "class_caps"):
            for e in payload.get(sect, []):
                flag = "" if e["applicable"] else "  [hypothesis not met]"
                lines.append(f"  {e['name']:<26} {e['value']:>14}  ({e['hypothesis']}){flag}")
        print("\n".join(lines))
    return EXIT_OK


def cmd_report(args) -> int:
    g = io.load_graph(args.graph)
    c = io.load_coloring(args.coloring, g.n)
    ver = coloring.verify_coloring(g, c)
    entries = [{"name": "colors_used", "value": str(c.k), "hypothesis": "valid packing coloring",
                "anchor": "definition of packing coloring", "holds": ver.ok}]
    q = g.meta.get("q")
    gi = g.meta.get("g")
    if q is not None and gi in (6, 8, 12):
        entries.extend(_entries(bounds.bracket(q, gi)))
    caps = bounds.check_coloring_against_caps(g, c, q=q, girth_value=gi)
    sizes = c.class_sizes()
    if q is not None and gi in (8, 12):
        for e in bounds.class_caps(q, gi).entries:
            if not e.name.startswith("class") or e.name == "class4_tight":
                continue
            d = e.to_dict()
            d["observed"] = sizes.get(int(e.name[5:]), 0)
            d["checked"] = e.name not in caps.details["skipped (hypothesis not met)"]
            d["holds"] = d["observed"] <= e.value
            entries.append(d)
    for name in ("class1 <= beta", "singular from diameter"):
        entries.append({"name": name, "value": str(int(caps.checks[name])), "hypothesis": "any packing coloring",
                        "anchor": "independence number" if name.startswith("class1") else "diameter",
                        "holds": caps.checks[name]})
    payload = {"valid": ver.ok, "k": c.k, "class_stats": c.class_stats(g), "entries": entries}
    _emit(args, payload)
    return EXIT_OK if ver.ok else EXIT_INVALID


def cmd_distances(args) -> int:
    g = io.load_graph(args.graph)
    _write(args.out, io.distances_csv(g))
    return EXIT_OK


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    p = argparse.ArgumentParser(prog="moorepack", description="Packing colorings of Moore graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", parents=[common], help="generate a graph file")
    s.add_argument("family", choices=["pg", "gq", "cage312", "classical"])
    s.add_argument("--q", type=int)
    s.add_argument("--name")
    s.add_argument("--params", type=int, nargs="*", default=[])
    s.add_argument("--out")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("verify", parents=[common], help="check a packing coloring")
    s.add_argument("graph")
    s.add_argument("coloring")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("solve", parents=[common], help="search for a packing coloring")
    s.add_argument("graph")
    s.add_argument("--max-colors", type=int)
    s.add_argument("--exact", action="store_true")
    s.add_argument("--order", choices=list(solver.ORDERS), default="distance")
    s.add_argument("--prune", help=f"comma list of {sorted(solver.PRUNES)} or 'none'")
    s.add_argument("--budget-s", type=float)
    s.add_argument("--node-budget", type=int)
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--out", help="write the witness coloring here")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("ovoid", parents=[common], help="construct or search ovoids")
    s.add_argument("graph")
    grp = s.add_mutually_exclusive_group(required=True)
    grp.add_argument("--construct", type=int, metavar="T")
    grp.add_argument("--search", type=int, metavar="TARGET", help="0 searches for the maximum")
    s.add_argument("--twist", help="alpha,beta for the construction")
    s.add_argument("--side", type=int, default=0)
    s.add_argument("--budget", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_ovoid)

    s = sub.add_parser("bounds", parents=[common], help="evaluate closed-form bounds")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--g", type=int, required=True)
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("report", parents=[common], help="coloring against every bound")
    s.add_argument("graph")
    s.add_argument("coloring")
    s.set_defaults(func=cmd_report)

    s = sub.add_parser("distances", parents=[common], help="distance matrix as CSV")
    s.add_argument("graph")
    s.add_argument("--out")
    s.set_defaults(func=cmd_distances)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FileFormatError, NotPrimePower, UnknownName, NotApplicable) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except MoorePackError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
