"""Brute-force ground truth for the graphical machinery.

Everything here works on the equivalence class of a maximally oriented
graph by explicit enumeration: list every DAG in the class, answer
d-separation on a DAG by moralization, and attach parametric models
(binary Bayesian networks, linear Gaussian structural equation models) so
that identification output can be checked numerically against truncated
factorization or interventional Gaussian conditioning.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Tuple

import numpy as np

from .graph import Graph, GraphError
from .ident import (DensityExpression, Factor, Fraction, MarginalOver,
                    Product)
from .meek import apply_background, pattern_of
from .reachability import ancestors

MAX_ENUMERABLE_UNDIRECTED = 20


# -- the DAG class ------------------------------------------------------------


def enumerate_dags(graph: Graph, max_undirected: int = MAX_ENUMERABLE_UNDIRECTED
                   ) -> list[Graph]:
    """Every DAG with the same adjacencies and directed edges as ``graph``
    and no unshielded collider that ``graph`` lacks.

    Orientations are tried exhaustively (2^u for u undirected edges), so the
    input is capped at ``max_undirected`` undirected edges.
    """
    und = graph.undirected_edges
    if len(und) > max_undirected:
        raise GraphError(
            f"{len(und)} undirected edges exceeds the enumeration cap "
            f"({max_undirected})")
    base = list(graph.directed_edges)
    colliders = graph.unshielded_colliders()
    out: list[Graph] = []
    for bits in itertools.product((0, 1), repeat=len(und)):
        oriented = base + [(a, b) if bit == 0 else (b, a)
                           for (a, b), bit in zip(und, bits)]
        candidate = Graph(graph.nodes, directed=oriented)
        if not candidate.directed_part_acyclic():
            continue
        if not candidate.unshielded_colliders() <= colliders:
            continue
        out.append(candidate)
    return out


def dag_d_separated(dag: Graph, xs, ys, zs=()) -> bool:
    """Classic d-separation in a DAG via the moral graph of the ancestral
    subgraph: marry parents, drop directions, delete Z, test connectivity."""
    x, y, z = frozenset(xs), frozenset(ys), frozenset(zs)
    if not x or not y:
        raise ValueError("d-separation needs nonempty endpoint sets")
    if x & y or x & z or y & z:
        raise ValueError("d-separation sets must be pairwise disjoint")
    if dag.undirected_edges or not dag.directed_part_acyclic():
        raise GraphError("moralization test requires a DAG")

    rel = ancestors(dag, x | y | z)
    adj: Dict[str, set[str]] = {v: set() for v in rel}
    for a, b in dag.directed_edges:
        if a in rel and b in rel:
            adj[a].add(b)
            adj[b].add(a)
    for v in rel:
        parents_in = [p for p in dag.parents_of(v) if p in rel]
        for p, q in itertools.combinations(parents_in, 2):
            adj[p].add(q)
            adj[q].add(p)

    seen = set(x)
    frontier = list(x)
    while frontier:
        node = frontier.pop()
        for nxt in adj[node]:
            if nxt in z or nxt in seen:
                continue
            if nxt in y:
                return False
            seen.add(nxt)
            frontier.append(nxt)
    return True


# -- random instances ----------------------------------------------------------


def random_dag(rng: random.Random, nodes: Iterable[str],
               edge_prob: float = 0.4) -> Graph:
    names = list(nodes)
    order = names[:]
    rng.shuffle(order)
    directed = [(order[i], order[j])
                for i in range(len(order)) for j in range(i + 1, len(order))
                if rng.random() < edge_prob]
    return Graph(names, directed=directed)


def random_mpdag(rng: random.Random, nodes: Iterable[str],
                 edge_prob: float = 0.4, orient_prob: float = 0.3) -> Graph:
    """A maximally oriented graph whose class contains a random DAG: take
    the DAG's pattern, re-orient a random subset of its undirected edges as
    in the DAG, and close under the orientation rules."""
    dag = random_dag(rng, nodes, edge_prob)
    cp = pattern_of(dag)
    picks = [(a, b) if dag.has_directed(a, b) else (b, a)
             for a, b in cp.undirected_edges if rng.random() < orient_prob]
    return apply_background(cp, picks)


# -- binary Bayesian network over a DAG ----------------------------------------


class DiscreteModel:
    """All variables binary; one CPT per node, indexed by the node's
    parents in graph node order.  ``cpts[v]`` has shape ``(2,) * k`` and
    stores P(v = 1 | parent values)."""

    def __init__(self, dag: Graph, cpts: Mapping[str, np.ndarray]):
        if dag.undirected_edges or not dag.directed_part_acyclic():
            raise GraphError("a discrete model needs a DAG")
        self.dag = dag
        self.parent_order = {v: dag.sorted_nodes(dag.parents_of(v))
                             for v in dag.nodes}
        self.cpts: Dict[str, np.ndarray] = {}
        for v in dag.nodes:
            table = np.asarray(cpts[v], dtype=float)
            want = (2,) * len(self.parent_order[v])
            if table.shape != want:
                raise ValueError(f"CPT for {v!r} has shape {table.shape}, "
                                 f"expected {want}")
            if np.any(table <= 0.0) or np.any(table >= 1.0):
                raise ValueError(f"CPT for {v!r} must lie strictly in (0, 1)")
            self.cpts[v] = table
        self._joint: np.ndarray | None = None

    @classmethod
    def random(cls, dag: Graph, rng: random.Random) -> "DiscreteModel":
        cpts = {}
        for v in dag.nodes:
            k = len(dag.parents_of(v))
            vals = [rng.uniform(0.1, 0.9) for _ in range(2 ** k)]
            cpts[v] = np.asarray(vals).reshape((2,) * k)
        return cls(dag, cpts)

    def _prob_one(self, node: str, value: int,
                  assignment: Mapping[str, int]) -> float:
        key = tuple(assignment[p] for p in self.parent_order[node])
        p1 = float(self.cpts[node][key]) if key else float(self.cpts[node])
        return p1 if value == 1 else 1.0 - p1

    def joint(self) -> np.ndarray:
        """Observational joint table, axes in graph node order."""
        if self._joint is None:
            self._joint = self.interventional({})
        return self._joint

    def interventional(self, do: Mapping[str, int]) -> np.ndarray:
        """Joint under do(``do``) by truncated factorization: intervened
        nodes become point masses, every other factor is kept."""
        nodes = self.dag.nodes
        table = np.zeros((2,) * len(nodes))
        for values in itertools.product((0, 1), repeat=len(nodes)):
            env = dict(zip(nodes, values))
            p = 1.0
            for v in nodes:
                if v in do:
                    if env[v] != do[v]:
                        p = 0.0
                        break
                else:
                    p *= self._prob_one(v, env[v], env)
            table[values] = p
        return table


def table_probability(table: np.ndarray, nodes: tuple[str, ...],
                      assignment: Mapping[str, int]) -> float:
    """Marginal probability of a partial assignment under a joint table."""
    index = [slice(None)] * len(nodes)
    for v, val in assignment.items():
        index[nodes.index(v)] = val
    return float(np.asarray(table)[tuple(index)].sum())


def table_conditional(table: np.ndarray, nodes: tuple[str, ...],
                      targets: Mapping[str, int],
                      given: Mapping[str, int]) -> float:
    den = table_probability(table, nodes, given) if given else 1.0
    num = table_probability(table, nodes, {**targets, **given})
    return num / den


def evaluate_expression(expr: DensityExpression, joint: np.ndarray,
                        nodes: tuple[str, ...],
                        assignment: Mapping[str, int]) -> float:
    """Value of a density expression under an observational joint table,
    at a (binary) assignment of every free variable of the expression."""

    def ev(e: DensityExpression, env: Dict[str, int]) -> float:
        if isinstance(e, Factor):
            return table_conditional(joint, nodes,
                                     {v: env[v] for v in e.targets},
                                     {v: env[v] for v in e.given})
        if isinstance(e, Product):
            out = 1.0
            for f in e.factors:
                out *= ev(f, env)
            return out
        if isinstance(e, MarginalOver):
            total = 0.0
            for values in itertools.product((0, 1), repeat=len(e.variables)):
                inner = dict(env)
                inner.update(zip(e.variables, values))
                total += ev(e.body, inner)
            return total
        if isinstance(e, Fraction):
            return ev(e.numerator, env) / ev(e.denominator, env)
        raise TypeError(f"not a density expression: {e!r}")

    return ev(expr, dict(assignment))


def interventional_conditional(model: DiscreteModel, do: Mapping[str, int],
                               targets: Mapping[str, int],
                               given: Mapping[str, int]) -> float:
    """Ground truth f(targets | do, given) from the truncated factorization."""
    table = model.interventional(do)
    return table_conditional(table, model.dag.nodes, targets, given)


# -- linear Gaussian structural equation models ---------------------------------


class LinearGaussianSem:
    """Zero-mean-by-default linear SEM over a DAG.  Every directed edge
    must carry a coefficient (zero is allowed, which keeps the edge in the
    graph while silencing it)."""

    def __init__(self, dag: Graph,
                 coefficients: Mapping[Tuple[str, str], float],
                 noise_variances: Mapping[str, float],
                 intercepts: Mapping[str, float] | None = None):
        if dag.undirected_edges or not dag.directed_part_acyclic():
            raise GraphError("a linear SEM needs a DAG")
        edges = set(dag.directed_edges)
        if set(coefficients) != edges:
            raise ValueError("coefficients must be keyed exactly by the "
                             "directed edges (parent, child)")
        if set(noise_variances) != set(dag.nodes):
            raise ValueError("every node needs a noise variance")
        if any(v < 0 for v in noise_variances.values()):
            raise ValueError("noise variances must be nonnegative")
        self.dag = dag
        self.coefficients = dict(coefficients)
        self.noise_variances = dict(noise_variances)
        self.intercepts = dict(intercepts or {})

    def _system(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        nodes = self.dag.nodes
        n = len(nodes)
        b = np.zeros((n, n))
        for (a, c), coef in self.coefficients.items():
            b[nodes.index(c), nodes.index(a)] = coef
        d = np.array([self.noise_variances[v] for v in nodes])
        c = np.array([self.intercepts.get(v, 0.0) for v in nodes])
        return b, d, c

    def mean(self) -> np.ndarray:
        b, _, c = self._system()
        return np.linalg.solve(np.eye(len(c)) - b, c)

    def covariance(self) -> np.ndarray:
        b, d, _ = self._system()
        t = np.linalg.inv(np.eye(len(d)) - b)
        return t @ np.diag(d) @ t.T

    def intervened(self, do: Mapping[str, float]) -> "LinearGaussianSem":
        """do() surgery: sever coefficients into intervened nodes, zero
        their noise, pin their intercepts to the set values."""
        coefficients = {edge: (0.0 if edge[1] in do else coef)
                        for edge, coef in self.coefficients.items()}
        variances = {v: (0.0 if v in do else var)
                     for v, var in self.noise_variances.items()}
        intercepts = {v: self.intercepts.get(v, 0.0) for v in self.dag.nodes}
        intercepts.update(do)
        return LinearGaussianSem(self.dag, coefficients, variances, intercepts)

    def conditional_expectation(self, target: str,
                                given: Mapping[str, float]) -> float:
        nodes = self.dag.nodes
        mu = self.mean()
        sigma = self.covariance()
        ti = nodes.index(target)
        if not given:
            return float(mu[ti])
        gi = [nodes.index(v) for v in given]
        gap = np.array([given[v] for v in given]) - mu[gi]
        weights = np.linalg.solve(sigma[np.ix_(gi, gi)], sigma[gi, ti])
        return float(mu[ti] + weights @ gap)


def wright_covariance(sem: LinearGaussianSem) -> np.ndarray:
    """Covariance by summing directed-path coefficient products (total
    effects) instead of inverting the system matrix:
    Cov(Xi, Xj) = sum_k Var(eps_k) * t(k -> i) * t(k -> j)."""
    dag = sem.dag
    nodes = dag.nodes
    n = len(nodes)
    order: list[str] = []
    pending = {v: len(dag.parents_of(v)) for v in nodes}
    ready = [v for v in nodes if pending[v] == 0]
    while ready:
        v = ready.pop()
        order.append(v)
        for child in dag.children_of(v):
            pending[child] -= 1
            if pending[child] == 0:
                ready.append(child)
    effects = np.zeros((n, n))
    for j_name in order:
        j = nodes.index(j_name)
        effects[j, j] = 1.0
        for p in dag.parents_of(j_name):
            effects[:, j] += sem.coefficients[(p, j_name)] \
                * effects[:, nodes.index(p)]
    d = np.array([sem.noise_variances[v] for v in nodes])
    return effects.T @ np.diag(d) @ effects


# -- counterexample checking ----------------------------------------------------


class DagNotInClass(ValueError):
    pass


@dataclass(frozen=True)
class CounterexampleReport:
    covariance_gap: float
    effect_first: float
    effect_second: float

    @property
    def effect_gap(self) -> float:
        return abs(self.effect_first - self.effect_second)


def verify_counterexample(graph: Graph, first: LinearGaussianSem,
                          second: LinearGaussianSem,
                          do: Mapping[str, float], target: str,
                          given: Mapping[str, float],
                          tol: float = 1e-9) -> CounterexampleReport:
    """Check that two SEMs witness non-identifiability over ``graph``'s
    class: both DAGs belong to the class, the observational (zero-mean
    Gaussian) laws coincide up to ``tol``, and the report carries the two
    interventional conditional expectations for comparison."""
    members = set(enumerate_dags(graph))
    for sem in (first, second):
        if sem.dag not in members:
            raise DagNotInClass(f"{sem.dag} is not in the class of {graph}")
        if any(abs(v) > 0 for v in sem.intercepts.values()):
            raise ValueError("observational SEMs must be zero-mean")
    gap = float(np.max(np.abs(first.covariance() - second.covariance())))
    if gap > tol:
        raise ValueError(
            f"the two SEMs disagree observationally (max gap {gap:.3e})")
    e1 = first.intervened(do).conditional_expectation(target, given)
    e2 = second.intervened(do).conditional_expectation(target, given)
    return CounterexampleReport(gap, e1, e2)
