"""Command-line interface: group inspection, searches, verification, Kotzig
arrays, union constructions, and the corpus survey."""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from . import corpus as corpusmod
from . import graphs, kotzig, report, unions
from .errors import GdmError, NotExists
from .groups import (
    AbelianGroup,
    enumerate_groups,
    format_element,
    format_group,
    group_sum,
    involutions,
    parse_group,
)
from .labeling import (
    Labeling,
    builtin_labeling,
    check_magic,
    decide,
    format_binary_labeling,
    format_certificate,
    parse_labeling,
)
from .search import (
    SearchBudget,
    bznl_search,
    find_complete_mapping,
    find_partition,
    search_magic,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_EXHAUSTED = 2


class _Parser(argparse.ArgumentParser):
    """argparse variant that exits 1 (not 2) on usage errors."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def _add_budget_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--budget-nodes", type=int, default=None, metavar="N")
    parser.add_argument("--budget-seconds", type=float, default=None, metavar="S")


def _budget(args: argparse.Namespace, mode: str = "first") -> SearchBudget:
    kwargs = {"mode": mode}
    if getattr(args, "budget_nodes", None) is not None:
        kwargs["node_limit"] = args.budget_nodes
    if getattr(args, "budget_seconds", None) is not None:
        kwargs["time_limit"] = args.budget_seconds
    return SearchBudget(**kwargs)


def _load_labeling(spec: str, graph: graphs.Graph) -> Labeling:
    if spec.startswith("builtin:"):
        labeling = builtin_labeling(spec[len("builtin:"):])
        if labeling.graph != graph:
            raise GdmError(f"{spec} does not label the selected graph")
        return labeling
    with open(spec, "r", encoding="utf-8") as fh:
        return parse_labeling(fh.read(), graph)


def build_parser() -> _Parser:
    parser = _Parser(prog="gdm", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_group = sub.add_parser("group", help="inspect abelian groups")
    mx = p_group.add_mutually_exclusive_group(required=True)
    mx.add_argument("--order", type=int)
    mx.add_argument("--spec")

    p_search = sub.add_parser("search", help="run a search")
    search_sub = p_search.add_subparsers(dest="what", required=True)

    p_magic = search_sub.add_parser("magic", help="search for a magic labeling")
    p_magic.add_argument("--graph", required=True)
    p_magic.add_argument("--group", required=True)
    p_magic.add_argument("--all", action="store_true")
    p_magic.add_argument(
        "--no-family-propagation",
        action="store_true",
        help="disable the GP(n,2)-specific forcing rules",
    )
    _add_budget_flags(p_magic)

    p_bznl = search_sub.add_parser(
        "bznl", help="search for a balanced zero-neighborhood labeling"
    )
    p_bznl.add_argument("--graph", required=True)
    p_bznl.add_argument("--kernel-limit", type=int, default=24, metavar="D")

    p_part = search_sub.add_parser("partition", help="search for an equitable partition")
    p_part.add_argument("--graph", required=True)
    p_part.add_argument("--parts", type=int, required=True)
    _add_budget_flags(p_part)

    p_map = search_sub.add_parser("mapping", help="search for a complete mapping")
    p_map.add_argument("--group", required=True)

    p_verify = sub.add_parser("verify", help="verify a labeling file")
    p_verify.add_argument("--graph", required=True)
    p_verify.add_argument("--labeling", required=True)

    p_kotzig = sub.add_parser("kotzig", help="build a Kotzig array")
    p_kotzig.add_argument("--rows", type=int, required=True)
    p_kotzig.add_argument("--cols", type=int, default=None)
    p_kotzig.add_argument("--group", default=None)

    p_construct = sub.add_parser("construct", help="build labelings of unions")
    construct_sub = p_construct.add_subparsers(dest="what", required=True)

    p_union = construct_sub.add_parser(
        "union", help="expand a labeling of G to t copies over a larger group"
    )
    p_union.add_argument("--graph", required=True)
    p_union.add_argument("--labeling", required=True)
    p_union.add_argument("--partition", default="auto", metavar="FILE|auto")
    p_union.add_argument("--target-group", required=True)
    p_union.add_argument("--out", default=None)
    _add_budget_flags(p_union)

    p_copies = construct_sub.add_parser(
        "copies", help="expand a labeling of G to valency-many copies"
    )
    p_copies.add_argument("--graph", required=True)
    p_copies.add_argument("--labeling", required=True)
    p_copies.add_argument("--copy-group", required=True)
    p_copies.add_argument("--out", default=None)

    p_survey = sub.add_parser("survey", help="run the corpus survey")
    p_survey.add_argument("--corpus", default=None, metavar="DIR")
    p_survey.add_argument("--max-n", type=int, default=None)
    p_survey.add_argument("--out", default="survey-out", metavar="DIR")
    _add_budget_flags(p_survey)

    return parser


def _group_line(group: AbelianGroup) -> str:
    return (
        f"{format_group(group)} order={group.order} "
        f"involutions={len(involutions(group))} "
        f"sum={format_element(group_sum(group))}"
    )


def _cmd_group(args: argparse.Namespace) -> int:
    if args.order is not None:
        for group in enumerate_groups(args.order):
            print(_group_line(group))
    else:
        print(_group_line(parse_group(args.spec)))
    return EXIT_OK


def _cmd_search_magic(args: argparse.Namespace) -> int:
    graph = graphs.parse_graph_selector(args.graph)
    group = parse_group(args.group)
    budget = _budget(args, mode="all" if args.all else "first")
    outcome = search_magic(
        graph, group, budget, use_gp2_propagation=not args.no_family_propagation
    )
    if outcome.status == "exhausted":
        print(f"EXHAUSTED nodes={outcome.nodes} time={outcome.elapsed:.2f}s")
        return EXIT_EXHAUSTED
    if outcome.status == "none":
        print("NONE")
        print(f"# nodes={outcome.nodes}")
        print(f"# pruning: {' '.join(outcome.pruning)}")
        return EXIT_OK
    print("FOUND")
    blocks = outcome.certificates if args.all else outcome.certificates[:1]
    for i, cert in enumerate(blocks):
        if i:
            print()
        print(format_certificate(cert), end="")
    return EXIT_OK


def _cmd_search_bznl(args: argparse.Namespace) -> int:
    graph = graphs.parse_graph_selector(args.graph)
    outcome = bznl_search(graph, limit=args.kernel_limit)
    if outcome.status == "exhausted":
        print(f"EXHAUSTED nullity={outcome.nullity} note={outcome.note}")
        return EXIT_EXHAUSTED
    if outcome.status == "none":
        print("NONE")
        if outcome.nullity is not None:
            print(f"# nullity={outcome.nullity} enumerated={outcome.enumerated}")
        else:
            print(f"# {outcome.note}")
        return EXIT_OK
    print("FOUND")
    print(format_binary_labeling(outcome.labeling), end="")
    return EXIT_OK


def _cmd_search_partition(args: argparse.Namespace) -> int:
    graph = graphs.parse_graph_selector(args.graph)
    outcome = find_partition(graph, args.parts, _budget(args))
    if outcome.status == "exhausted":
        print(f"EXHAUSTED nodes={outcome.nodes} time={outcome.elapsed:.2f}s")
        return EXIT_EXHAUSTED
    if outcome.status == "none":
        print("NONE")
        return EXIT_OK
    print("FOUND")
    print(graphs.format_partition_text(outcome.partition), end="")
    return EXIT_OK


def _cmd_search_mapping(args: argparse.Namespace) -> int:
    group = parse_group(args.group)
    theta = find_complete_mapping(group)
    if theta is None:
        print("NONE")
        return EXIT_OK
    print("FOUND")
    for g, image in zip(group.elements(), theta):
        print(f"{format_element(g)} -> {format_element(image)}")
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    graph = graphs.parse_graph_selector(args.graph)
    labeling = _load_labeling(args.labeling, graph)
    check = check_magic(labeling)
    if check.ok:
        print(f"MAGIC mu={format_element(check.certificate.mu)}")
    else:
        defect = check.defect
        where = (
            f" vertex={graph.names[defect.vertex]}" if defect.vertex is not None else ""
        )
        print(f"NOT-MAGIC reason={defect.kind}{where}")
    return EXIT_OK


def _cmd_kotzig(args: argparse.Namespace) -> int:
    try:
        if args.group is not None:
            group = parse_group(args.group)
            if args.cols is not None and args.cols != group.order:
                raise GdmError(
                    f"--cols {args.cols} conflicts with group order {group.order}"
                )
            array = kotzig.build_group(args.rows, group)
            for row in array.entries:
                print(" ".join(format_element(e) for e in row))
        else:
            if args.cols is None:
                raise GdmError("either --cols or --group is required")
            array = kotzig.build_integer(args.rows, args.cols)
            for row in array.entries:
                print(" ".join(str(e) for e in row))
    except NotExists as exc:
        print(f"NOT-EXISTS {exc}")
    return EXIT_OK


def _resolve_partition(
    args: argparse.Namespace, graph: graphs.Graph
) -> graphs.VertexPartition | None:
    if args.partition != "auto":
        with open(args.partition, "r", encoding="utf-8") as fh:
            return graphs.parse_partition_text(fh.read(), graph)
    r = graphs.regular_valency(graph)
    if r is None:
        return None
    for p in range(2, r + 1):
        if r % p:
            continue
        outcome = find_partition(graph, p, _budget(args))
        if outcome.status == "found":
            return outcome.partition
    return None


def _emit_certificate(cert, out: str | None) -> None:
    text = format_certificate(cert)
    if out is None:
        print(text, end="")
    else:
        Path(out).write_text(text, encoding="utf-8")
        print(f"# wrote {out}")
        print(f"MAGIC mu={format_element(cert.mu)}")


def _cmd_construct_union(args: argparse.Namespace) -> int:
    graph = graphs.parse_graph_selector(args.graph)
    labeling = _load_labeling(args.labeling, graph)
    check = check_magic(labeling)
    if not check.ok:
        raise GdmError(f"base labeling is not magic: {check.defect.kind}")
    target = parse_group(args.target_group)
    partition = _resolve_partition(args, graph)
    plan = unions.plan_union(graph, check.certificate, partition, target)
    result = unions.execute_plan(plan)
    for line in result.audit:
        print(f"# {line}")
    _emit_certificate(result.certificate, args.out)
    return EXIT_OK


def _cmd_construct_copies(args: argparse.Namespace) -> int:
    graph = graphs.parse_graph_selector(args.graph)
    labeling = _load_labeling(args.labeling, graph)
    check = check_magic(labeling)
    if not check.ok:
        raise GdmError(f"base labeling is not magic: {check.defect.kind}")
    copy_group = parse_group(args.copy_group)
    cert = unions.replicate_valency_copies(check.certificate, copy_group)
    print(f"# copies={copy_group.order} group={format_group(cert.labeling.group)}")
    _emit_certificate(cert, args.out)
    return EXIT_OK


def _survey_one(
    graph_id: str,
    graph_text: str,
    group_spec: str,
    node_limit: int | None,
    time_limit: float | None,
) -> dict:
    graph = graphs.parse_graph_text(graph_text)
    group = parse_group(group_spec)
    kwargs = {}
    if node_limit is not None:
        kwargs["node_limit"] = node_limit
    if time_limit is not None:
        kwargs["time_limit"] = time_limit
    budget = SearchBudget(**kwargs)
    start = time.monotonic()
    decision = decide(graph, group, budget)
    cert = None
    if decision.is_magic:
        verdict, justification, cert = "MAGIC", "SEARCH", decision.certificate
    elif decision.is_not_magic:
        verdict, justification = "NOT-MAGIC", decision.reason.tag
    else:
        outcome = search_magic(graph, group, budget)
        if outcome.status == "found":
            verdict, justification, cert = "MAGIC", "SEARCH", outcome.certificate
        elif outcome.status == "none":
            verdict, justification = "NOT-MAGIC", "SEARCH"
        else:
            verdict, justification = "EXHAUSTED", "SEARCH"
    return {
        "graph_id": graph_id,
        "group_spec": group_spec,
        "verdict": verdict,
        "justification": justification,
        "cert_text": format_certificate(cert) if cert else None,
        "seconds": time.monotonic() - start,
    }


def _survey_one_star(task: tuple) -> dict:
    return _survey_one(*task)


def _cmd_survey(args: argparse.Namespace) -> int:
    entries = corpusmod.corpus_entries(args.corpus, args.max_n)
    tasks = []
    for graph_id, graph in entries:
        text = graphs.format_graph_text(graph)
        for group in enumerate_groups(graph.n):
            tasks.append(
                (
                    graph_id,
                    text,
                    format_group(group),
                    args.budget_nodes,
                    args.budget_seconds,
                )
            )
    threads = max(1, int(os.environ.get("GDM_THREADS", "1")))
    if threads > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_survey_one_star, tasks))
    else:
        results = [_survey_one_star(task) for task in tasks]

    out_dir = Path(args.out)
    certs_dir = out_dir / "certs"
    certs_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    for res in results:
        cert_ref = None
        if res["cert_text"] is not None:
            cert_ref = f"certs/{res['graph_id']}__{res['group_spec']}.lbl"
            (out_dir / cert_ref).write_text(res["cert_text"], encoding="utf-8")
        rows.append(
            report.SurveyRow(
                res["graph_id"],
                res["group_spec"],
                res["verdict"],
                res["justification"],
                cert_ref,
                res["seconds"],
            )
        )
    table = report.survey_table(rows)
    (out_dir / "survey.tsv").write_text(table, encoding="utf-8")
    (out_dir / "survey.log").write_text(report.survey_log(rows), encoding="utf-8")
    report.render_survey_figure(rows, out_dir / "survey.png")
    print(table, end="")
    if any(row.verdict == "EXHAUSTED" for row in rows):
        return EXIT_EXHAUSTED
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "group":
            return _cmd_group(args)
        if args.command == "search":
            if args.what == "magic":
                return _cmd_search_magic(args)
            if args.what == "bznl":
                return _cmd_search_bznl(args)
            if args.what == "partition":
                return _cmd_search_partition(args)
            return _cmd_search_mapping(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "kotzig":
            return _cmd_kotzig(args)
        if args.command == "construct":
            if args.what == "union":
                return _cmd_construct_union(args)
            return _cmd_construct_copies(args)
        return _cmd_survey(args)
    except GdmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
