"""Command-line front end.

Exit codes: 0 verified success, 1 verification failure (or search target
missed), 2 usage error.  Every run prints a JSON report to stdout.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import cyclo, formats, spreads, steiner
from .field import FieldCtx, FieldError, element_order, field_from_spec, format_poly
from .pgeom import PG
from .report import RunReport, emit_report


class UsageError(Exception):
    pass


def _common(parser: argparse.ArgumentParser, field_default: str | None = None) -> None:
    parser.add_argument("--field", default=field_default, required=field_default is None,
                        help="preset name (f3_5, f2_7, f2_13, ...) or p=..,n=..,poly=..")
    parser.add_argument("--out", help="write the main artifact here")
    parser.add_argument("--report", help="also write the JSON report to this file")
    parser.add_argument("--budget-seconds", type=float, default=None)
    parser.add_argument("--workers", type=int, default=1, help="cap on concurrent workers (runs are single-threaded)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="grassauto", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("field", help="build and validate a field")
    _common(p)

    p = sub.add_parser("cosets", help="cyclotomic cosets and six-coset groups")
    _common(p)
    p.add_argument("--list", action="store_true", help="include the full 'rep: e1 .. en' listing")

    p = sub.add_parser("spread", help="first spread from a seed")
    sp = p.add_subparsers(dest="action", required=True)
    q = sp.add_parser("build")
    _common(q, "f3_5")
    q.add_argument("--seed", default="paper_pg53.seed", help="seed file (default: bundled paper_pg53.seed)")

    p = sub.add_parser("parallelism", help="parallelisms of lines")
    sp = p.add_subparsers(dest="action", required=True)
    q = sp.add_parser("build")
    _common(q, "f3_5")
    q.add_argument("--seed", default="paper_pg53.seed", help="seed file (default: bundled paper_pg53.seed)")
    q = sp.add_parser("verify")
    _common(q, "f3_5")
    q.add_argument("--input", required=True, help="spreads file written by 'parallelism build --out'")
    q = sp.add_parser("search")
    _common(q)

    p = sub.add_parser("steiner", help="S_2[2,3,n] clique pipeline")
    sp = p.add_subparsers(dest="action", required=True)
    for name in ("vertices", "graph", "clique", "expand"):
        q = sp.add_parser(name)
        _common(q, "f2_13")
        q.add_argument("--mode", choices=("coset", "complete"), default="coset")
        q.add_argument("--vertices", help="vertex sidecar to reuse instead of enumerating")
        if name == "clique":
            q.add_argument("--target", type=int, default=None, help="clique size to reach (default: Steiner size)")
            q.add_argument("--seed", type=int, default=None, help="shuffle vertex order with this RNG seed")
            q.add_argument("--restart-seconds", type=float, default=None)
            q.add_argument("--verify-code", action="store_true", help="expand and verify the clique's code")
            q.add_argument("--code-out", help="write the expanded code here")
        if name == "expand":
            q.add_argument("--clique", required=True, help="vertex-id list file")
    q = sp.add_parser("verify")
    _common(q, "f2_13")
    q.add_argument("--code", required=True, help="code file, one 7-tuple per line")
    return ap


def _field(report: RunReport, spec: str) -> FieldCtx:
    try:
        ctx = field_from_spec(spec)
    except (FieldError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    report.field = {"spec": spec, "p": ctx.p, "n": ctx.n, "poly": format_poly(ctx.params.poly)}
    return ctx


def _write(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")


# -- commands -------------------------------------------------------------------------


def cmd_field(args, report: RunReport) -> None:
    with report.phase("build"):
        ctx = _field(report, args.field)
    order = element_order(ctx, 1)
    report.counts.update(q_minus_1=ctx.q_minus_1, m=ctx.m, alpha_order=order)
    report.verdict("primitive", order == ctx.q_minus_1)


def cmd_cosets(args, report: RunReport) -> None:
    ctx = _field(report, args.field)
    with report.phase("cosets"):
        table = cyclo.build_coset_table(ctx)
    report.counts["cosets_by_size"] = {str(k): v for k, v in sorted(table.size_histogram().items())}
    report.counts["size_n_cosets"] = table.size_n_count
    report.verdict("size_n_count", table.size_n_count == (ctx.p**ctx.n - ctx.p) // ctx.n)
    groups = None
    if ctx.p == 2 and ctx.n % 6 == 1:
        with report.phase("groups"):
            try:
                groups = cyclo.build_group_table(ctx, table)
            except cyclo.GroupingInconsistent as exc:
                report.verdict("grouping", False, str(exc))
        if groups is not None:
            report.counts["groups"] = groups.group_count
            report.verdict("grouping", 6 * ctx.n * groups.group_count == 2**ctx.n - 2)
    _write(args.out, cyclo.coset_report(table, groups, listing=True))
    if args.list:
        report.details["listing"] = cyclo.coset_report(table, groups, listing=True)


def cmd_spread_build(args, report: RunReport) -> None:
    ctx = _field(report, args.field)
    pg = PG(ctx)
    seed = formats.load_seed(pg, args.seed)
    with report.phase("expand"):
        try:
            spread = spreads.expand_seed(pg, seed)
        except spreads.ConstructionError as exc:
            report.verdict("spread", False, exc.violation)
            return
    report.counts["lines"] = report.counts["line_count"] = len(spread)
    report.counts["shifted_base_lines"] = sum(len(r) for r in spreads.shifted_base_lines(pg, seed))
    report.verdict("spread", spreads.verify_spread(pg, spread.lines) is None)
    _write(args.out, formats.format_lines(pg, spread.lines))


def _parallelism_report(pg: PG, par: spreads.Parallelism, report: RunReport) -> None:
    bad = spreads.verify_parallelism(pg, par)
    report.counts["spreads"] = report.counts["spread_count"] = len(par.spreads)
    report.counts["lines"] = report.counts["line_count"] = par.line_count()
    report.counts["all_lines"] = pg.line_count()
    report.counts["points"] = pg.num_points
    report.verdict("coverage_ok", bad is None, bad)


def cmd_parallelism_build(args, report: RunReport) -> None:
    ctx = _field(report, args.field)
    pg = PG(ctx)
    seed = formats.load_seed(pg, args.seed)
    with report.phase("build"):
        try:
            par = spreads.build_parallelism(pg, seed)
        except spreads.ConstructionError as exc:
            report.verdict("coverage_ok", False, exc.violation)
            return
    with report.phase("verify"):
        _parallelism_report(pg, par, report)
    _write(args.out, formats.format_spreads(pg, [s.lines for s in par.spreads]))


def cmd_parallelism_verify(args, report: RunReport) -> None:
    ctx = _field(report, args.field)
    pg = PG(ctx)
    with report.phase("read"):
        data = formats.parse_spreads(pg, Path(args.input).read_text(encoding="utf-8"))
    with report.phase("verify"):
        _parallelism_report(pg, spreads.Parallelism([spreads.Spread(s) for s in data]), report)


def cmd_parallelism_search(args, report: RunReport) -> None:
    ctx = _field(report, args.field)
    pg = PG(ctx)
    cond = spreads.check_conditions(ctx.p, ctx.n)
    report.details["conditions"] = {"n_odd": cond.n_odd, "n_divides": cond.n_divides, "coprime": cond.coprime}
    budget = 60.0 if args.budget_seconds is None else args.budget_seconds
    with report.phase("search"):
        try:
            seed = spreads.search_seed(pg, budget_seconds=budget)
        except spreads.SearchExhausted as exc:
            report.details["search"] = "exhausted"
            report.verdict("seed_found", False, str(exc))
            return
        except spreads.SearchTimedOut as exc:
            report.details["search"] = "timed_out"
            report.counts["best_depth"] = exc.best_depth
            report.verdict("seed_found", False, str(exc))
            return
    report.details["search"] = "found"
    with report.phase("verify"):
        _parallelism_report(pg, spreads.build_parallelism(pg, seed), report)
    report.verdict("seed_found", True)
    text = formats.format_seed(pg, seed)
    report.details["seed"] = text
    _write(args.out, text)


def _steiner_setup(args, report: RunReport):
    ctx = _field(report, args.field)
    if ctx.p != 2:
        raise UsageError("steiner commands need a p = 2 field")
    groups = None
    if args.mode == "coset":
        table = cyclo.build_coset_table(ctx)
        try:
            groups = cyclo.build_group_table(ctx, table)
        except cyclo.GroupingInconsistent as exc:
            raise UsageError(str(exc)) from None
    if getattr(args, "vertices", None):
        with report.phase("read_vertices"):
            with open(args.vertices, encoding="utf-8") as fh:
                labels, reps = formats.read_vertex_map(fh)
        universe = groups.group_count if groups is not None else ctx.q_minus_1
        vs = steiner.VertexSet(mode=args.mode, labels=labels, reps=reps, multiplicity=[1] * len(labels),
                               universe=universe)
    else:
        with report.phase("vertices"):
            vs = steiner.enumerate_vertices(ctx, groups, mode=args.mode)
        report.counts["orbits"] = vs.orbits_total
    report.counts["vertices"] = len(vs)
    return ctx, groups, vs


def cmd_steiner_vertices(args, report: RunReport) -> None:
    ctx, groups, vs = _steiner_setup(args, report)
    report.counts["max_multiplicity"] = max(vs.multiplicity, default=0)
    # every representative must realise its own label
    ok = True
    for lab, rep in zip(vs.labels, vs.reps):
        if not steiner.is_subspace(ctx, rep):
            ok = False
            break
        if args.mode == "coset" and (steiner.group_label(ctx, rep, groups) != lab or len(lab) != 7):
            ok = False
            break
    report.verdict("vertices_realised", ok)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            formats.write_vertex_map(fh, vs.labels, vs.reps)


def cmd_steiner_graph(args, report: RunReport) -> None:
    ctx, groups, vs = _steiner_setup(args, report)
    with report.phase("graph"):
        g = steiner.build_graph(vs)
    report.counts["edges"] = g.edge_count
    report.details["edge_density"] = round(g.density(), 6)
    if args.out:
        with report.phase("write"):
            with open(args.out, "w", encoding="utf-8") as fh:
                formats.write_dimacs(fh, g.vertex_count, g.edges(), g.edge_count)
            with open(args.out + ".vertices", "w", encoding="utf-8") as fh:
                formats.write_vertex_map(fh, vs.labels, vs.reps)
    report.verdict("graph_built", True)


def cmd_steiner_clique(args, report: RunReport) -> None:
    ctx, groups, vs = _steiner_setup(args, report)
    with report.phase("graph"):
        g = steiner.build_graph(vs)
    report.counts["edges"] = g.edge_count
    target = args.target if args.target is not None else steiner.steiner_clique_size(ctx.n, args.mode)
    if args.seed is not None:
        report.seeds["clique_order"] = args.seed
    with report.phase("clique"):
        res = steiner.search_clique(g, target, budget_seconds=args.budget_seconds, seed=args.seed,
                                    restart_seconds=args.restart_seconds)
    report.counts["clique"] = len(res.clique)
    report.counts["target"] = target
    report.counts["clique_nodes"] = res.nodes
    report.details["clique"] = res.clique
    report.details["clique_status"] = (
        "reached" if res.reached_target else "timed_out" if res.timed_out else "exhausted"
    )
    if res.exhaustive and not res.reached_target:
        # target proven impossible; pin down the actual maximum as well
        with report.phase("max_clique"):
            best = steiner.search_clique(g, None, budget_seconds=args.budget_seconds)
        if len(best.clique) > len(res.clique):
            res.clique = best.clique
        report.counts["max_clique"] = len(best.clique) if best.exhaustive else None
        report.details["clique"] = res.clique
        report.counts["clique"] = len(res.clique)
    report.verdict("is_clique", is_clique_in(g, res.clique))
    report.verdict("target_reached", res.reached_target,
                   f"best clique {len(res.clique)} < target {target} ({report.details['clique_status']})")
    _write(args.out, formats.format_clique(res.clique))
    if args.verify_code and res.clique:
        _expand_and_verify(ctx, res.clique, vs, report, args.code_out)


def is_clique_in(g: steiner.DisjointnessGraph, clique: Sequence[int]) -> bool:
    return all(g.has_edge(u, v) for i, u in enumerate(clique) for v in clique[i + 1 :]) and len(set(clique)) == len(clique)


def _expand_and_verify(ctx, clique, vs, report: RunReport, out: str | None) -> None:
    with report.phase("expand"):
        try:
            code = steiner.expand_code(ctx, clique, vs)
        except steiner.SteinerError as exc:
            report.verdict("expand", False, str(exc))
            return
    report.counts["code_size"] = len(code)
    full = (ctx.n if vs.mode == "coset" else 1) * ctx.q_minus_1
    report.verdict("code_size", len(code) == len(clique) * full,
                   f"code size {len(code)} != {len(clique)} * {full}")
    with report.phase("verify"):
        rep = steiner.verify_code(ctx, code)
    report.counts["two_subspaces_distinct"] = rep.distinct_two_subspaces
    report.counts["two_subspaces_all"] = rep.all_two_subspaces
    report.details["coverage_histogram"] = {str(k): v for k, v in sorted(rep.coverage_histogram.items())}
    report.details["steiner_structure"] = rep.steiner
    report.verdict("min_distance_ok", rep.min_distance_ok, rep.first_violation)
    if out:
        with report.phase("write"):
            with open(out, "w", encoding="utf-8") as fh:
                formats.write_code(fh, code.members)


def cmd_steiner_expand(args, report: RunReport) -> None:
    ctx, groups, vs = _steiner_setup(args, report)
    clique = formats.parse_clique(Path(args.clique).read_text(encoding="utf-8"))
    if any(not 0 <= v < len(vs) for v in clique):
        raise UsageError("clique lists a vertex id outside the vertex set")
    _expand_and_verify(ctx, clique, vs, report, args.out)


def cmd_steiner_verify(args, report: RunReport) -> None:
    ctx = _field(report, args.field)
    with report.phase("read"):
        with open(args.code, encoding="utf-8") as fh:
            members = formats.read_code(fh)
    closed = all(steiner.is_subspace(ctx, row) for row in members[:: max(1, len(members) // 2000)])
    report.verdict("members_are_subspaces", closed)
    if not closed:
        return
    with report.phase("verify"):
        rep = steiner.verify_code(ctx, members)
    report.counts["code_size"] = rep.members
    report.counts["two_subspaces_distinct"] = rep.distinct_two_subspaces
    report.counts["two_subspaces_all"] = rep.all_two_subspaces
    report.details["coverage_histogram"] = {str(k): v for k, v in sorted(rep.coverage_histogram.items())}
    report.details["steiner_structure"] = rep.steiner
    report.verdict("min_distance_ok", rep.min_distance_ok, rep.first_violation)


COMMANDS = {
    ("field", None): cmd_field,
    ("cosets", None): cmd_cosets,
    ("spread", "build"): cmd_spread_build,
    ("parallelism", "build"): cmd_parallelism_build,
    ("parallelism", "verify"): cmd_parallelism_verify,
    ("parallelism", "search"): cmd_parallelism_search,
    ("steiner", "vertices"): cmd_steiner_vertices,
    ("steiner", "graph"): cmd_steiner_graph,
    ("steiner", "clique"): cmd_steiner_clique,
    ("steiner", "expand"): cmd_steiner_expand,
    ("steiner", "verify"): cmd_steiner_verify,
}


def run(argv: Sequence[str] | None = None, stdout=None) -> tuple[int, RunReport | None]:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), None
    action = getattr(args, "action", None)
    report = RunReport(command=" ".join(x for x in (args.cmd, action) if x))
    report.details["workers"] = args.workers
    try:
        COMMANDS[(args.cmd, action)](args, report)
    except FileNotFoundError as exc:
        print(f"grassauto: error: no such file: {exc.filename or exc}", file=sys.stderr)
        return 2, None
    except (UsageError, formats.FormatError) as exc:
        parser.print_usage(sys.stderr)
        print(f"grassauto: error: {exc}", file=sys.stderr)
        return 2, None
    stdout.write(emit_report(report, args.report))
    return (0 if report.ok else 1), report


def main(argv: Sequence[str] | None = None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
