"""Buckets and the partial causal ordering of a node set.

A bucket of D is the intersection of D with one maximal undirected-connected
component of the graph (components are taken over all nodes, walking only
undirected edges, so two D-nodes joined through out-of-D undirected paths
share a bucket).  The ordering peels components whose edges to the other
remaining components all point inward, prepending each peeled component's
D-intersection, so the returned list runs from possible causes to effects.
"""

from __future__ import annotations

from typing import Iterable

from .graph import Graph, GraphError


def undirected_components(graph: Graph) -> list[frozenset[str]]:
    """Maximal undirected-connected node sets, ordered by smallest member."""
    seen: set[str] = set()
    comps: list[frozenset[str]] = []
    for v in graph.nodes:
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for w in graph.undirected_neighbors_of(u):
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def bucket_decomposition(graph: Graph, nodes: Iterable[str]) -> list[frozenset[str]]:
    """The nonempty intersections of ``nodes`` with the undirected components,
    ordered by smallest member (no causal ordering implied)."""
    d = frozenset(nodes)
    for v in d:
        graph.index(v)
    out = [comp & d for comp in undirected_components(graph)]
    return [b for b in out if b]


def pco(graph: Graph, nodes: Iterable[str]) -> list[tuple[str, ...]]:
    """Partial causal ordering of ``nodes`` as a list of bucket tuples.

    Repeatedly removes a remaining component with only incoming edges from
    the other remaining components (smallest node index first when several
    qualify) and prepends its intersection with ``nodes``.
    """
    d = frozenset(nodes)
    for v in d:
        graph.index(v)
    remaining = undirected_components(graph)
    ordered: list[tuple[str, ...]] = []
    while remaining:
        rest_nodes = set()
        for comp in remaining:
            rest_nodes |= comp
        pick = None
        for comp in remaining:
            others = rest_nodes - comp
            if all(b not in others
                   for a, b in graph.directed_edges if a in comp):
                pick = comp
                break
        if pick is None:
            raise GraphError("no sink component; graph is not maximally oriented")
        remaining.remove(pick)
        bucket = pick & d
        if bucket:
            ordered.insert(0, graph.sorted_nodes(bucket))
    return ordered
