"""Ancestral and possible-ancestral relations, and possibly directed paths.

A path ``<v0, ..., vk>`` is possibly directed when the graph has no edge
``vi <- vj`` for any ``i < j``.  That condition is pairwise over the whole
path, not edge-by-edge: an early node may be cut off by a directed edge from
a node much later on the path.  The searches below therefore extend partial
paths and re-check the new node against every node already on the path;
worst case exponential, which is accepted for the graph sizes in scope.
All set relations (ancestors, descendants, possible variants) are reflexive.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .graph import Graph


def parents(graph: Graph, nodes: Iterable[str]) -> frozenset[str]:
    """Union of the nodes' parents, minus the nodes themselves."""
    s = set(nodes)
    out: set[str] = set()
    for v in s:
        out |= graph.parents_of(v)
    return frozenset(out - s)


def _closure(graph: Graph, nodes: Iterable[str], step) -> frozenset[str]:
    out = set(nodes)
    for v in out:
        graph.index(v)
    stack = list(out)
    while stack:
        v = stack.pop()
        for w in step(v):
            if w not in out:
                out.add(w)
                stack.append(w)
    return frozenset(out)


def ancestors(graph: Graph, nodes: Iterable[str]) -> frozenset[str]:
    """Nodes with a directed path into ``nodes`` (reflexive)."""
    return _closure(graph, nodes, graph.parents_of)


def descendants(graph: Graph, nodes: Iterable[str]) -> frozenset[str]:
    """Nodes reachable from ``nodes`` along directed edges (reflexive)."""
    return _closure(graph, nodes, graph.children_of)


def _semi_step_forward(graph: Graph, v: str) -> frozenset[str]:
    return graph.children_of(v) | graph.undirected_neighbors_of(v)


def _semi_step_backward(graph: Graph, v: str) -> frozenset[str]:
    return graph.parents_of(v) | graph.undirected_neighbors_of(v)


def possible_descendants(graph: Graph, nodes: Iterable[str]) -> frozenset[str]:
    """Endpoints of possibly directed paths out of ``nodes`` (reflexive)."""
    start = frozenset(nodes)
    for v in start:
        graph.index(v)
    if not graph.undirected_edges:
        return descendants(graph, start)
    reached = set(start)

    def extend(path: list[str], on_path: set[str]) -> None:
        last = path[-1]
        for w in graph.sorted_nodes(_semi_step_forward(graph, last)):
            if w in on_path or w in start:
                continue
            # pairwise condition: no edge from w back into the path so far
            if any(graph.has_directed(w, p) for p in path):
                continue
            reached.add(w)
            path.append(w)
            on_path.add(w)
            extend(path, on_path)
            path.pop()
            on_path.discard(w)

    for s in graph.sorted_nodes(start):
        extend([s], {s})
    return frozenset(reached)


def possible_ancestors(graph: Graph, nodes: Iterable[str]) -> frozenset[str]:
    """Sources of possibly directed paths into ``nodes`` (reflexive)."""
    start = frozenset(nodes)
    for v in start:
        graph.index(v)
    if not graph.undirected_edges:
        return ancestors(graph, start)
    reached = set(start)

    def extend(path: list[str], on_path: set[str]) -> None:
        # path grows from the target end outward, so a newly added node w
        # sits earliest on the possibly directed path; the pairwise
        # condition then forbids any directed edge p -> w from a node p
        # already on the path.
        first = path[-1]
        for w in graph.sorted_nodes(_semi_step_backward(graph, first)):
            if w in on_path or w in start:
                continue
            if any(graph.has_directed(p, w) for p in path):
                continue
            reached.add(w)
            path.append(w)
            on_path.add(w)
            extend(path, on_path)
            path.pop()
            on_path.discard(w)

    for s in graph.sorted_nodes(start):
        extend([s], {s})
    return frozenset(reached)


def find_proper_pc_path(graph: Graph, sources: Iterable[str],
                        targets: Iterable[str], *,
                        start_undirected: bool = False,
                        forbidden: Iterable[str] = ()) -> tuple[str, ...] | None:
    """Shortest proper possibly directed path from ``sources`` to ``targets``.

    Proper means only the first node lies in ``sources``.  With
    ``start_undirected`` the first edge must be undirected.  Ties among
    shortest paths break lexicographically by node index.  Returns None if
    no such path exists.
    """
    src = frozenset(sources)
    tgt = frozenset(targets)
    bad = frozenset(forbidden)
    for v in src | tgt | bad:
        graph.index(v)
    if src & tgt:
        raise ValueError("sources and targets must be disjoint")

    # breadth-first over partial paths, one level per length, kept in
    # lexicographic order so the first completion wins deterministically
    level: list[tuple[str, ...]] = [(s,) for s in graph.sorted_nodes(src - bad)]
    while level:
        nxt: list[tuple[str, ...]] = []
        for path in level:
            last = path[-1]
            steps = _semi_step_forward(graph, last)
            if len(path) == 1 and start_undirected:
                steps = graph.undirected_neighbors_of(last)
            for w in graph.sorted_nodes(steps):
                if w in path or w in src or w in bad:
                    continue
                if any(graph.has_directed(w, p) for p in path):
                    continue
                if w in tgt:
                    return path + (w,)
                nxt.append(path + (w,))
        level = nxt
    return None


def is_possibly_directed_path(graph: Graph, path: Sequence[str]) -> bool:
    """Check the pairwise condition on an explicit node sequence."""
    n = len(path)
    if len(set(path)) != n or n == 0:
        return False
    for i in range(n - 1):
        if graph.edge_between(path[i], path[i + 1]) is None \
                or graph.has_directed(path[i + 1], path[i]):
            return False
    for i in range(n):
        for j in range(i + 1, n):
            if graph.has_directed(path[j], path[i]):
                return False
    return True
