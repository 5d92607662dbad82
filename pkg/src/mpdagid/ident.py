"""Identification of conditional interventional densities.

Expressions are closed forms in observational conditional densities:
factors ``f(targets | given)``, products, one marginalization node, and a
fraction.  The entry points are

* :func:`id_formula` -- the bucket-wise closed form, applicable when the
  conditioning set avoids the treatments' possible descendants and no
  proper possibly directed path from the treatments to the outcomes starts
  with an undirected edge;
* :func:`cidm` -- the general algorithm: absorbs treatment nodes into the
  conditioning set while a do-calculus step licenses it, then finishes with
  a conditional-density off-ramp or a fraction of two formula instances,
  raising :class:`NotIdentifiable` with a certificate otherwise;
* :func:`cidme` -- the per-class enumeration: where ``cidm`` would fail it
  orients the first undirected edge of the offending path both ways,
  re-closes, and recurses, yielding one expression per leaf class.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Union

from .dsep import OpenPathWitness, d_separated, find_open_path
from .graph import Graph, GraphClass
from .meek import refine
from .pco import pco
from .reachability import (ancestors, find_proper_pc_path, parents,
                           possible_ancestors, possible_descendants)


# -- expression tree ---------------------------------------------------------


@dataclass(frozen=True)
class Factor:
    """Observational conditional density f(targets | given).

    ``fixed`` marks the given nodes currently held at intervention values;
    it is presentation metadata and excluded from equality.
    """

    targets: tuple[str, ...]
    given: tuple[str, ...] = ()
    fixed: tuple[str, ...] = field(default=(), compare=False)


@dataclass(frozen=True)
class Product:
    factors: tuple["DensityExpression", ...]


@dataclass(frozen=True)
class MarginalOver:
    variables: tuple[str, ...]
    body: "DensityExpression"


@dataclass(frozen=True)
class Fraction:
    numerator: "DensityExpression"
    denominator: "DensityExpression"


DensityExpression = Union[Factor, Product, MarginalOver, Fraction]


def normal_form(expr: DensityExpression, graph: Graph) -> DensityExpression:
    """Canonical shape: node tuples sorted by the graph's node order,
    nested products flattened, factors sorted by target then given indices,
    single-entry products unwrapped, empty marginals dropped.  No algebraic
    rewriting (identical numerator/denominator factors are not cancelled)."""

    def nodes_key(nodes: Iterable[str]) -> tuple[str, ...]:
        return graph.sorted_nodes(nodes)

    def factor_key(f: DensityExpression):
        if isinstance(f, Factor):
            return (0, tuple(map(graph.index, f.targets)),
                    tuple(map(graph.index, f.given)))
        return (1, (), ())

    def go(e: DensityExpression) -> DensityExpression:
        if isinstance(e, Factor):
            return Factor(nodes_key(e.targets), nodes_key(e.given),
                          nodes_key(e.fixed))
        if isinstance(e, Product):
            parts: list[DensityExpression] = []
            for f in e.factors:
                f = go(f)
                if isinstance(f, Product):
                    parts.extend(f.factors)
                else:
                    parts.append(f)
            parts.sort(key=factor_key)
            if len(parts) == 1:
                return parts[0]
            return Product(tuple(parts))
        if isinstance(e, MarginalOver):
            body = go(e.body)
            if not e.variables:
                return body
            return MarginalOver(nodes_key(e.variables), body)
        if isinstance(e, Fraction):
            return Fraction(go(e.numerator), go(e.denominator))
        raise TypeError(f"not a density expression: {e!r}")

    return go(expr)


def _sym(label: str) -> str:
    return label.lower()


def _sym_latex(label: str) -> str:
    m = re.fullmatch(r"([A-Za-z]+)(\d+)", label)
    if m:
        return f"{m.group(1).lower()}_{{{m.group(2)}}}"
    return label.lower()


def render_text(expr: DensityExpression) -> str:
    """Plain-text rendering, e.g. ``INT_{v2} f(y|x,v1,v2) f(v2|v1) dv2``."""
    if isinstance(expr, Factor):
        head = ",".join(_sym(v) for v in expr.targets)
        if expr.given:
            return f"f({head}|{','.join(_sym(v) for v in expr.given)})"
        return f"f({head})"
    if isinstance(expr, Product):
        if not expr.factors:
            return "1"
        return " ".join(render_text(f) for f in expr.factors)
    if isinstance(expr, MarginalOver):
        vs = [_sym(v) for v in expr.variables]
        tail = " ".join(f"d{v}" for v in vs)
        return f"INT_{{{','.join(vs)}}} {render_text(expr.body)} {tail}"
    if isinstance(expr, Fraction):
        return f"({render_text(expr.numerator)}) / ({render_text(expr.denominator)})"
    raise TypeError(f"not a density expression: {expr!r}")


def expression_to_json(expr: DensityExpression) -> dict:
    if isinstance(expr, Factor):
        return {"kind": "factor", "targets": list(expr.targets),
                "given": list(expr.given), "fixed": list(expr.fixed)}
    if isinstance(expr, Product):
        return {"kind": "product",
                "factors": [expression_to_json(f) for f in expr.factors]}
    if isinstance(expr, MarginalOver):
        return {"kind": "marginal", "variables": list(expr.variables),
                "body": expression_to_json(expr.body)}
    if isinstance(expr, Fraction):
        return {"kind": "fraction",
                "numerator": expression_to_json(expr.numerator),
                "denominator": expression_to_json(expr.denominator)}
    raise TypeError(f"not a density expression: {expr!r}")


def render_latex(expr: DensityExpression) -> str:
    if isinstance(expr, Factor):
        head = ", ".join(_sym_latex(v) for v in expr.targets)
        if expr.given:
            return f"f({head} \\mid {', '.join(_sym_latex(v) for v in expr.given)})"
        return f"f({head})"
    if isinstance(expr, Product):
        if not expr.factors:
            return "1"
        return " ".join(render_latex(f) for f in expr.factors)
    if isinstance(expr, MarginalOver):
        vs = [_sym_latex(v) for v in expr.variables]
        tail = " ".join(f"\\, d{v}" for v in vs)
        return f"\\int {render_latex(expr.body)} {tail}"
    if isinstance(expr, Fraction):
        return (f"\\frac{{{render_latex(expr.numerator)}}}"
                f"{{{render_latex(expr.denominator)}}}")
    raise TypeError(f"not a density expression: {expr!r}")


# -- errors and certificates -------------------------------------------------


class IdentificationError(Exception):
    pass


class PreconditionViolated(IdentificationError):
    """The query does not meet an entry condition (set overlap, conditioning
    inside the treatments' possible descendants, or a non-MPDAG graph)."""


@dataclass(frozen=True)
class DsepFailure:
    """The do-calculus premise that failed when absorbing ``picked``."""

    picked: str
    conditioning: tuple[str, ...]
    edges_removed_into: tuple[str, ...]
    edges_removed_out_of: tuple[str, ...]
    open_path: OpenPathWitness


@dataclass(frozen=True)
class FailCertificate:
    """Why identification failed: the proper possibly directed path that
    starts with an undirected edge, and (from the algorithm) the failed
    premise.  ``x_current``/``z_current`` are the sets at failure time;
    their union equals the union of the original treatment and
    conditioning sets."""

    offending_path: tuple[str, ...]
    x_current: tuple[str, ...]
    z_current: tuple[str, ...]
    dsep_failure: DsepFailure | None = None


class NotIdentifiable(IdentificationError):
    def __init__(self, message: str, certificate: FailCertificate):
        super().__init__(message)
        self.certificate = certificate


# -- query plumbing -----------------------------------------------------------


def _validate_query(graph: Graph, xs, ys, zs, require_mpdag: bool = True
                    ) -> tuple[frozenset[str], frozenset[str], frozenset[str]]:
    x, y, z = frozenset(xs), frozenset(ys), frozenset(zs)
    for v in x | y | z:
        graph.index(v)
    if not x or not y:
        raise PreconditionViolated("treatment and outcome sets must be nonempty")
    if x & y or x & z or y & z:
        raise PreconditionViolated("treatment, outcome and conditioning sets overlap")
    if require_mpdag and graph.classify() is GraphClass.PDAG:
        raise PreconditionViolated("graph is not a maximally oriented PDAG or DAG")
    return x, y, z


# -- do-calculus rule premises -------------------------------------------------


def _disjoint(graph: Graph, *sets):
    out = [frozenset(s) for s in sets]
    for s in out:
        for v in s:
            graph.index(v)
    flat: set[str] = set()
    for s in out:
        if flat & s:
            raise ValueError("rule sets must be pairwise disjoint")
        flat |= s
    return out


def rule1_holds(graph: Graph, xs, ys, zs, ws=()) -> bool:
    """Insertion/deletion of observations: the premise that Y and Z are
    d-separated by X, W once edges into X are removed."""
    x, y, z, w = _disjoint(graph, xs, ys, zs, ws)
    return d_separated(graph.remove_edges_into(x), y, z, x | w)


def rule2_holds(graph: Graph, xs, ys, zs, ws=()) -> bool:
    """Action/observation exchange for do(z): premise checked with edges
    into X and out of Z removed."""
    x, y, z, w = _disjoint(graph, xs, ys, zs, ws)
    mut = graph.remove_edges_into(x).remove_edges_out_of(z)
    return d_separated(mut, y, z, x | w)


def rule3_holds(graph: Graph, xs, ys, zs, ws=()) -> bool:
    """Insertion/deletion of actions: premise checked with edges removed
    into X and into the part of Z that cannot possibly cause W once X is
    taken out of the graph."""
    x, y, z, w = _disjoint(graph, xs, ys, zs, ws)
    sub = graph.induced_subgraph(set(graph.nodes) - x)
    z_prime = z - possible_ancestors(sub, w)
    return d_separated(graph.remove_edges_into(x | z_prime), y, z, x | w)


# -- identification -----------------------------------------------------------


def rule3_shortcut(graph: Graph, xs, ys, zs=()) -> DensityExpression | None:
    """``f(y | z)`` when neither Y nor Z can possibly descend from X."""
    x, y, z = _validate_query(graph, xs, ys, zs)
    pd_x = possible_descendants(graph, x)
    if (y & pd_x) or (z & pd_x):
        return None
    return normal_form(Factor(tuple(y), tuple(z)), graph)


def id_formula(graph: Graph, xs, ys, zs=()) -> DensityExpression:
    """Bucket-wise closed form for f(y | do(x), z).

    Raises
    ------
    PreconditionViolated
        If Z meets the possible descendants of X.
    NotIdentifiable
        If a proper possibly directed path from X to Y starts with an
        undirected edge (the effect is then not identifiable).
    """
    x, y, z = _validate_query(graph, xs, ys, zs)
    pd_x = possible_descendants(graph, x)
    if z & pd_x:
        raise PreconditionViolated(
            "conditioning set intersects possible descendants of the treatments")
    path = find_proper_pc_path(graph, x, y, start_undirected=True)
    if path is not None:
        raise NotIdentifiable(
            "a proper possibly directed path from the treatments to the outcomes "
            f"starts with an undirected edge: {' - '.join(path)}",
            FailCertificate(path, graph.sorted_nodes(x), graph.sorted_nodes(z)))

    anc = ancestors(graph.induced_subgraph(set(graph.nodes) - x), y)
    buckets = pco(graph, anc - z)
    integrate_over = anc - (z | y)

    factors: list[Factor] = []
    prev: set[str] = set()
    for bucket in buckets:
        if not (z & possible_descendants(graph, bucket)):
            pa = parents(graph, bucket)
            factors.append(Factor(bucket, graph.sorted_nodes(pa),
                                  fixed=graph.sorted_nodes(pa & x)))
        else:
            given = (prev - pd_x) | z
            factors.append(Factor(bucket, graph.sorted_nodes(given)))
        prev |= set(bucket)

    body: DensityExpression = factors[0] if len(factors) == 1 \
        else Product(tuple(factors))
    if integrate_over:
        body = MarginalOver(graph.sorted_nodes(integrate_over), body)
    return normal_form(body, graph)


def _absorb(graph: Graph, x1: set[str], y: frozenset[str], z1: set[str]):
    """Run the absorption loop in place.  Returns None when it exits
    cleanly, else the (offending path, mutilated graph) of the failure."""
    while True:
        path = find_proper_pc_path(graph, x1, y | z1, start_undirected=True)
        if path is None:
            return None
        picked = path[0]
        rest = x1 - {picked}
        mut = graph.remove_edges_into(rest).remove_edges_out_of({picked})
        if d_separated(mut, y, {picked}, rest | z1):
            x1.remove(picked)
            z1.add(picked)
            continue
        return path, mut


def _finish(graph: Graph, x1: set[str], y: frozenset[str],
            z1: set[str]) -> DensityExpression:
    """Post-loop identification: conditional-density off-ramp, else a
    fraction of two formula instances over the conditioning split."""
    x_eff = frozenset(x1) - possible_ancestors(graph, z1)
    if d_separated(graph.remove_edges_into(x_eff), y, x1, z1):
        return normal_form(Factor(tuple(y), tuple(z1)), graph)
    pd_x1 = possible_descendants(graph, x1)
    z_desc = z1 & pd_x1
    z_rest = frozenset(z1) - pd_x1
    try:
        numerator = id_formula(graph, x1, y | z_desc, z_rest)
        if not z_desc:
            return numerator
        denominator = id_formula(graph, x1, z_desc, z_rest)
    except IdentificationError as exc:  # pragma: no cover - loop exit forbids it
        raise AssertionError(
            "absorption loop exited but the closed form was rejected; "
            f"this contradicts the loop invariant: {exc}") from exc
    return Fraction(numerator, denominator)


def cidm(graph: Graph, xs, ys, zs=()) -> DensityExpression:
    """Identify f(y | do(x), z) in a maximally oriented graph.

    Raises :class:`NotIdentifiable` with a :class:`FailCertificate` when the
    effect is not identifiable from the class.
    """
    x, y, z = _validate_query(graph, xs, ys, zs)
    x1, z1 = set(x), set(z)
    failure = _absorb(graph, x1, y, z1)
    if failure is not None:
        path, mut = failure
        picked = path[0]
        cond = (x1 - {picked}) | z1
        witness = find_open_path(mut, y, {picked}, cond)
        assert witness is not None
        raise NotIdentifiable(
            f"cannot absorb {picked!r}: the premise d-separation fails",
            FailCertificate(
                path, graph.sorted_nodes(x1), graph.sorted_nodes(z1),
                DsepFailure(picked, graph.sorted_nodes(cond),
                            graph.sorted_nodes(x1 - {picked}), (picked,),
                            witness)))
    return _finish(graph, x1, y, z1)


@dataclass(frozen=True)
class CidmeLeaf:
    """One leaf of the enumeration: a refined graph and the expression
    identifying the effect in that graph's class."""

    graph: Graph
    expression: DensityExpression


def cidme_tree(graph: Graph, xs, ys, zs=()) -> list[CidmeLeaf]:
    """Enumerate identifications across the class, splitting on the first
    undirected edge of the offending path whenever absorption fails.  The
    leaves' classes partition the input graph's class."""
    x, y, z = _validate_query(graph, xs, ys, zs)
    return _cidme(graph, set(x), y, set(z))


def _cidme(graph: Graph, x1: set[str], y: frozenset[str],
           z1: set[str]) -> list[CidmeLeaf]:
    failure = _absorb(graph, x1, y, z1)
    if failure is None:
        return [CidmeLeaf(graph, _finish(graph, x1, y, z1))]
    path, _ = failure
    a, b = path[0], path[1]
    left = refine(graph, a, b)
    right = refine(graph, b, a)
    return (_cidme(left, set(x1), y, set(z1))
            + _cidme(right, set(x1), y, set(z1)))


def cidme(graph: Graph, xs, ys, zs=()) -> list[DensityExpression]:
    """The multiset of leaf expressions of :func:`cidme_tree`."""
    return [leaf.expression for leaf in cidme_tree(graph, xs, ys, zs)]
