"""Command line front end.

Graphs are read from a file (or stdin with ``-``) in the edge-list format
of :func:`mpdagid.graph.parse_graph_text`, or as JSON when the input
starts with ``{``.  Every subcommand accepts ``--json`` for structured
output.  Exit codes: 0 on success, 2 on malformed input or queries, 3 when
``identify`` finds the effect not identifiable.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import random
import sys

from .dsep import OpenPathWitness, d_separated, find_open_path
from .graph import (Graph, GraphError, graph_to_json, graph_to_text,
                    parse_graph_json, parse_graph_text)
from .ident import (IdentificationError, NotIdentifiable, cidm, cidme_tree,
                    expression_to_json, render_latex, render_text)
from .meek import apply_background, meek_closure
from .oracle import (DiscreteModel, enumerate_dags, evaluate_expression,
                     interventional_conditional)
from .pco import pco
from .reachability import (ancestors, descendants, parents,
                           possible_ancestors, possible_descendants)

VERIFY_TOL = 1e-9


def _load_graph(source: str) -> Graph:
    text = sys.stdin.read() if source == "-" else open(source).read()
    if text.lstrip().startswith("{"):
        return parse_graph_json(text)
    return parse_graph_text(text)


def _graph_obj(graph: Graph) -> dict:
    return json.loads(graph_to_json(graph))


def _split(arg: str | None) -> tuple[str, ...]:
    if not arg:
        return ()
    return tuple(part.strip() for part in arg.split(",") if part.strip())


def _graph_line(graph: Graph) -> str:
    parts = [f"node {v}" for v in graph.nodes
             if not graph.neighbors_of(v)]
    parts.extend(str(e) for e in graph.edges)
    return ", ".join(parts)


def _path_text(graph: Graph, path: tuple[str, ...]) -> str:
    out = [path[0]]
    for a, b in zip(path, path[1:]):
        if graph.has_directed(a, b):
            out.append("->")
        elif graph.has_directed(b, a):
            out.append("<-")
        else:
            out.append("--")
        out.append(b)
    return " ".join(out)


def _witness_json(witness: OpenPathWitness) -> dict:
    return {"path": list(witness.path),
            "collider_descents": [list(p)
                                  for p in witness.collider_descents]}


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


# -- subcommands ---------------------------------------------------------------


def cmd_complete(graph: Graph, args) -> int:
    pairs = []
    for chunk in args.orient or []:
        for token in chunk.split(","):
            token = token.strip()
            if not token:
                continue
            if ">" not in token:
                raise ValueError(f"orientation {token!r} is not of the "
                                 "form A>B")
            a, b = token.split(">", 1)
            pairs.append((a.strip(), b.strip()))
    closed = apply_background(graph, pairs) if pairs else meek_closure(graph)
    _emit(args, _graph_obj(closed), [graph_to_text(closed)])
    return 0


def cmd_dags(graph: Graph, args) -> int:
    dags = enumerate_dags(graph)
    _emit(args,
          {"count": len(dags), "dags": [_graph_obj(d) for d in dags]},
          [f"{len(dags)} DAGs in the class"] + [_graph_line(d) for d in dags])
    return 0


def cmd_pco(graph: Graph, args) -> int:
    nodes = _split(args.nodes) or graph.nodes
    buckets = pco(graph, nodes)
    _emit(args, {"buckets": [list(b) for b in buckets]},
          [",".join(b) for b in buckets])
    return 0


def cmd_dsep(graph: Graph, args) -> int:
    x, y, z = _split(args.x), _split(args.y), _split(args.z)
    witness = find_open_path(graph, x, y, z)
    if witness is None:
        assert d_separated(graph, x, y, z)
        _emit(args, {"separated": True, "witness": None}, ["separated"])
    else:
        lines = ["connected", f"open path: {_path_text(graph, witness.path)}"]
        lines.extend(f"collider descent: {_path_text(graph, descent)}"
                     for descent in witness.collider_descents)
        _emit(args, {"separated": False, "witness": _witness_json(witness)},
              lines)
    return 0


_RELATIONS = {
    "possible-descendants": possible_descendants,
    "possible-ancestors": possible_ancestors,
    "descendants": descendants,
    "ancestors": ancestors,
    "parents": parents,
}


def cmd_reach(graph: Graph, args) -> int:
    found = _RELATIONS[args.relation](graph, _split(args.nodes))
    ordered = graph.sorted_nodes(found)
    _emit(args, {"relation": args.relation, "nodes": list(ordered)},
          [",".join(ordered) if ordered else "(empty)"])
    return 0


def cmd_identify(graph: Graph, args) -> int:
    try:
        expr = cidm(graph, _split(args.x), _split(args.y), _split(args.z))
    except NotIdentifiable as exc:
        cert = exc.certificate
        payload = {
            "identifiable": False,
            "certificate": {
                "offending_path": list(cert.offending_path),
                "x_current": list(cert.x_current),
                "z_current": list(cert.z_current),
                "dsep_failure": None if cert.dsep_failure is None else {
                    "picked": cert.dsep_failure.picked,
                    "conditioning": list(cert.dsep_failure.conditioning),
                    "edges_removed_into":
                        list(cert.dsep_failure.edges_removed_into),
                    "edges_removed_out_of":
                        list(cert.dsep_failure.edges_removed_out_of),
                    "open_path": _witness_json(cert.dsep_failure.open_path),
                },
            },
        }
        if args.json:
            print(json.dumps(payload, indent=2))
        else:
            print("not identifiable", file=sys.stderr)
            print(f"offending path: {_path_text(graph, cert.offending_path)}",
                  file=sys.stderr)
            if cert.dsep_failure is not None:
                fail = cert.dsep_failure
                print(f"cannot absorb {fail.picked} given "
                      f"{{{','.join(fail.conditioning)}}}:", file=sys.stderr)
                print("  open path in the mutilated graph: "
                      f"{' - '.join(fail.open_path.path)}", file=sys.stderr)
        return 3
    payload = {"identifiable": True, "expression": render_text(expr),
               "latex": render_latex(expr), "ast": expression_to_json(expr)}
    _emit(args, payload,
          [render_latex(expr) if args.latex else render_text(expr)])
    return 0


def cmd_enumerate(graph: Graph, args) -> int:
    leaves = cidme_tree(graph, _split(args.x), _split(args.y), _split(args.z))
    rendered = [render_text(leaf.expression) for leaf in leaves]
    payload = {"leaves": [{"graph": _graph_obj(leaf.graph),
                           "expression": render_text(leaf.expression),
                           "latex": render_latex(leaf.expression),
                           "ast": expression_to_json(leaf.expression)}
                          for leaf in leaves],
               "distinct_expressions": len(set(rendered))}
    lines = [f"{len(leaves)} leaves, {len(set(rendered))} distinct expressions"]
    for leaf, text in zip(leaves, rendered):
        lines.append(f"[{_graph_line(leaf.graph)}]")
        lines.append(f"  {text}")
    _emit(args, payload, lines)
    return 0


def cmd_verify(graph: Graph, args) -> int:
    x, y, z = _split(args.x), _split(args.y), _split(args.z)
    try:
        expr = cidm(graph, x, y, z)
    except NotIdentifiable as exc:
        print(f"not identifiable, nothing to verify: {exc}", file=sys.stderr)
        return 1
    seed = args.seed if args.seed is not None \
        else int(os.environ.get("MPDAG_ID_SEED", "0"))
    rng = random.Random(seed)
    dags = enumerate_dags(graph)
    free = graph.sorted_nodes(set(x) | set(y) | set(z))
    worst = 0.0
    for dag in dags:
        for _ in range(args.trials):
            model = DiscreteModel.random(dag, rng)
            joint = model.joint()
            for values in itertools.product((0, 1), repeat=len(free)):
                env = dict(zip(free, values))
                truth = interventional_conditional(
                    model, {v: env[v] for v in x},
                    {v: env[v] for v in y}, {v: env[v] for v in z})
                got = evaluate_expression(expr, joint, graph.nodes, env)
                worst = max(worst, abs(got - truth))
    ok = worst <= VERIFY_TOL
    _emit(args, {"verified": ok, "max_gap": worst, "dags_checked": len(dags),
                 "trials_per_dag": args.trials,
                 "expression": render_text(expr)},
          [f"expression: {render_text(expr)}",
           f"checked {len(dags)} DAGs x {args.trials} models, "
           f"max gap {worst:.3e}",
           "verified" if ok else "MISMATCH"])
    return 0 if ok else 1


# -- parser --------------------------------------------------------------------


def _add_query_args(sub, conditioning_help: str) -> None:
    sub.add_argument("-x", required=True, metavar="NODES",
                     help="treatment nodes, comma separated")
    sub.add_argument("-y", required=True, metavar="NODES",
                     help="outcome nodes, comma separated")
    sub.add_argument("-z", default="", metavar="NODES", help=conditioning_help)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mpdagid",
        description="Identify conditional interventional densities in "
                    "maximally oriented partially directed acyclic graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("graph", help="graph file in edge-list or JSON "
                                     "format, or - for stdin")
        p.add_argument("--json", action="store_true",
                       help="emit structured JSON instead of text")
        p.set_defaults(func=func)
        return p

    p = add("complete", cmd_complete,
            "close a graph under the orientation rules, optionally after "
            "adding background orientations")
    p.add_argument("--orient", action="append", metavar="A>B",
                   help="orient A -- B as A -> B before closing; "
                        "repeatable, accepts comma lists")

    add("dags", cmd_dags, "list every DAG in the graph's class")

    p = add("pco", cmd_pco, "partial causal ordering of a node set into "
                            "bucket lists")
    p.add_argument("--nodes", default="", metavar="NODES",
                   help="nodes to order (default: all)")

    p = add("dsep", cmd_dsep, "d-separation of definite-status paths, with "
                              "an open-path witness when connected")
    _add_query_args(p, "conditioning nodes, comma separated")

    p = add("reach", cmd_reach, "reachability sets (possible descendants, "
                                "possible ancestors, ...)")
    p.add_argument("--nodes", required=True, metavar="NODES",
                   help="start nodes, comma separated")
    p.add_argument("--relation", choices=sorted(_RELATIONS),
                   default="possible-descendants")

    p = add("identify", cmd_identify,
            "closed-form expression for f(y | do(x), z), exit 3 with a "
            "certificate when not identifiable")
    _add_query_args(p, "conditioning nodes, comma separated")
    p.add_argument("--latex", action="store_true",
                   help="print the LaTeX rendering")

    p = add("enumerate", cmd_enumerate,
            "per-class identification: one expression for each leaf of the "
            "orientation split")
    _add_query_args(p, "conditioning nodes, comma separated")

    p = add("verify", cmd_verify,
            "check the identified expression numerically against truncated "
            "factorization on every DAG in the class")
    _add_query_args(p, "conditioning nodes, comma separated")
    p.add_argument("--trials", type=int, default=2,
                   help="random models per DAG (default 2)")
    p.add_argument("--seed", type=int, default=None,
                   help="RNG seed (default: MPDAG_ID_SEED or 0)")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        graph = _load_graph(args.graph)
        return args.func(graph, args)
    except (GraphError, IdentificationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
