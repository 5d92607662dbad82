import itertools
import random

import numpy as np
import pytest

from mpdagid import (CounterexampleReport, DagNotInClass, DiscreteModel,
                     Factor, Graph, GraphError, LinearGaussianSem,
                     MarginalOver, Product, dag_d_separated, enumerate_dags,
                     evaluate_expression, interventional_conditional,
                     parse_graph_text, random_dag, random_mpdag,
                     table_conditional, table_probability,
                     verify_counterexample, wright_covariance)

from cases import counterexample_one, counterexample_two


class TestEnumeration:
    def test_triangle_cpdag(self):
        g = parse_graph_text("A -- B\nB -- C\nA -- C\n")
        assert len(enumerate_dags(g)) == 6

    def test_chain_cpdag(self):
        g = parse_graph_text("A -- B\nB -- C\n")
        # A -> B -> C, A <- B <- C, A <- B -> C; the collider is excluded
        assert len(enumerate_dags(g)) == 3

    def test_dag_is_its_own_class(self):
        g = parse_graph_text("A -> B\nB -> C\n")
        assert enumerate_dags(g) == [g]

    def test_cap(self):
        nodes = [f"N{i}" for i in range(22)]
        und = [("N0", f"N{i}") for i in range(1, 22)]
        g = Graph(nodes, undirected=und)
        with pytest.raises(GraphError):
            enumerate_dags(g)

    def test_members_are_consistent_extensions(self):
        rng = random.Random(1)
        for _ in range(20):
            g = random_mpdag(rng, ["A", "B", "C", "D", "E"], 0.5, 0.3)
            for dag in enumerate_dags(g):
                assert not dag.undirected_edges
                assert dag.directed_part_acyclic()
                assert dag.unshielded_colliders() <= g.unshielded_colliders()
                assert set(dag.directed_edges) >= set(g.directed_edges)


class TestDagDsep:
    def test_chain_and_collider(self):
        g = parse_graph_text("A -> B\nB -> C\n")
        assert not dag_d_separated(g, {"A"}, {"C"})
        assert dag_d_separated(g, {"A"}, {"C"}, {"B"})
        h = parse_graph_text("A -> C\nB -> C\n")
        assert dag_d_separated(h, {"A"}, {"B"})
        assert not dag_d_separated(h, {"A"}, {"B"}, {"C"})

    def test_descendant_of_collider_opens(self):
        g = parse_graph_text("A -> C\nB -> C\nC -> D\n")
        assert not dag_d_separated(g, {"A"}, {"B"}, {"D"})


class TestDiscreteModel:
    def test_cpt_validation(self):
        g = parse_graph_text("A -> B\n")
        with pytest.raises(ValueError):
            DiscreteModel(g, {"A": np.array(0.0), "B": np.array([0.3, 0.7])})

    def test_joint_sums_to_one(self):
        rng = random.Random(2)
        for _ in range(10):
            dag = random_dag(rng, ["A", "B", "C", "D"])
            model = DiscreteModel.random(dag, rng)
            assert abs(model.joint().sum() - 1.0) < 1e-12

    def test_truncated_factorization_by_hand(self):
        g = parse_graph_text("A -> B\n")
        pa = 0.3
        pb = np.array([0.2, 0.9])  # P(B=1 | A)
        model = DiscreteModel(g, {
            "A": np.array(pa),
            "B": pb,
        })
        joint = model.joint()
        assert abs(table_probability(joint, g.nodes, {"A": 1, "B": 1})
                   - pa * 0.9) < 1e-12
        cut = model.interventional({"A": 1})
        assert abs(table_probability(cut, g.nodes, {"A": 1, "B": 1})
                   - 0.9) < 1e-12
        assert table_probability(cut, g.nodes, {"A": 0, "B": 1}) == 0.0

    def test_conditional(self):
        g = parse_graph_text("A -> B\n")
        model = DiscreteModel(g, {"A": np.array(0.5),
                                  "B": np.array([0.1, 0.8])})
        joint = model.joint()
        got = table_conditional(joint, g.nodes, {"B": 1}, {"A": 0})
        assert abs(got - 0.1) < 1e-12


class TestEvaluateExpression:
    def test_marginal_of_chain_product(self):
        g = parse_graph_text("A -> B\nB -> C\n")
        rng = random.Random(3)
        model = DiscreteModel.random(g, rng)
        joint = model.joint()
        expr = MarginalOver(("B",), Product((
            Factor(("B",), ("A",)), Factor(("C",), ("B",)))))
        for a, c in itertools.product((0, 1), repeat=2):
            want = sum(
                table_conditional(joint, g.nodes, {"B": b}, {"A": a})
                * table_conditional(joint, g.nodes, {"C": c}, {"B": b})
                for b in (0, 1))
            got = evaluate_expression(expr, joint, g.nodes, {"A": a, "C": c})
            assert abs(got - want) < 1e-12

    def test_matches_interventional_backdoor(self):
        g = parse_graph_text("V -> X\nV -> Y\nX -> Y\n")
        rng = random.Random(4)
        model = DiscreteModel.random(g, rng)
        joint = model.joint()
        expr = MarginalOver(("V",), Product((
            Factor(("Y",), ("X", "V"), fixed=("X",)), Factor(("V",)))))
        for x, y in itertools.product((0, 1), repeat=2):
            truth = interventional_conditional(model, {"X": x}, {"Y": y}, {})
            got = evaluate_expression(expr, joint, g.nodes,
                                      {"X": x, "Y": y})
            assert abs(got - truth) < 1e-12


class TestLinearGaussian:
    def test_hand_covariance(self):
        g = parse_graph_text("A -> B\n")
        sem = LinearGaussianSem(g, {("A", "B"): 2.0}, {"A": 1.0, "B": 0.5})
        cov = sem.covariance()
        i = {n: k for k, n in enumerate(g.nodes)}
        assert abs(cov[i["A"], i["A"]] - 1.0) < 1e-12
        assert abs(cov[i["A"], i["B"]] - 2.0) < 1e-12
        assert abs(cov[i["B"], i["B"]] - 4.5) < 1e-12

    def test_coefficient_keys_must_match_edges(self):
        g = parse_graph_text("A -> B\n")
        with pytest.raises(ValueError):
            LinearGaussianSem(g, {("B", "A"): 1.0}, {"A": 1.0, "B": 1.0})
        with pytest.raises(ValueError):
            LinearGaussianSem(g, {}, {"A": 1.0, "B": 1.0})

    def test_intervened(self):
        g = parse_graph_text("A -> B\n")
        sem = LinearGaussianSem(g, {("A", "B"): 2.0}, {"A": 1.0, "B": 0.5})
        cut = sem.intervened({"A": 3.0})
        mean = cut.mean()
        i = {n: k for k, n in enumerate(g.nodes)}
        assert abs(mean[i["A"]] - 3.0) < 1e-12
        assert abs(mean[i["B"]] - 6.0) < 1e-12
        assert abs(cut.covariance()[i["A"], i["A"]]) < 1e-12

    def test_conditional_expectation_regression_slope(self):
        g = parse_graph_text("A -> B\n")
        sem = LinearGaussianSem(g, {("A", "B"): 2.0}, {"A": 1.0, "B": 0.5})
        assert abs(sem.conditional_expectation("B", {"A": 1.5}) - 3.0) < 1e-12

    def test_wright_agrees_with_inverse(self):
        rng = random.Random(5)
        for _ in range(25):
            dag = random_dag(rng, [f"N{i}" for i in range(6)], 0.5)
            coefs = {e: rng.uniform(-2, 2) for e in dag.directed_edges}
            noise = {v: rng.uniform(0.2, 2.0) for v in dag.nodes}
            sem = LinearGaussianSem(dag, coefs, noise)
            assert np.allclose(wright_covariance(sem), sem.covariance(),
                               atol=1e-9)


class TestVerifyCounterexample:
    def test_frozen_pair_verifies(self):
        g, sem1, sem2 = counterexample_one()
        report = verify_counterexample(g, sem1, sem2, {"X": 1.0}, "Y",
                                       {"Z": 0.0})
        assert isinstance(report, CounterexampleReport)
        assert report.covariance_gap <= 1e-9
        assert abs(report.effect_first - (-0.25)) <= 1e-9
        assert abs(report.effect_second) <= 1e-9
        assert report.effect_gap > 0.2

    def test_rejects_dag_outside_class(self):
        g, sem1, _ = counterexample_one()
        stray = parse_graph_text("V1 -> X\nV1 -> Z\nV1 -> Y\n"
                                 "Z -> Y\nX -> Y\n")
        stray_sem = LinearGaussianSem(
            stray,
            {e: 1.0 for e in stray.directed_edges},
            {v: 1.0 for v in stray.nodes})
        with pytest.raises(DagNotInClass):
            verify_counterexample(g, sem1, stray_sem, {"X": 1.0}, "Y",
                                  {"Z": 0.0})

    def test_rejects_mismatched_observational_law(self):
        g, sem1, sem2 = counterexample_one()
        broken = LinearGaussianSem(
            sem2.dag,
            {**dict(sem2.coefficients), ("Z", "X"): 0.7},
            dict(sem2.noise_variances))
        with pytest.raises(ValueError):
            verify_counterexample(g, sem1, broken, {"X": 1.0}, "Y",
                                  {"Z": 0.0})

    def test_second_frozen_pair(self):
        g, sem1, sem2 = counterexample_two()
        report = verify_counterexample(g, sem1, sem2, {"X": 1.0}, "Y",
                                       {"Z": 0.0})
        assert report.covariance_gap <= 1e-9
        assert abs(report.effect_first - (-2.0 / 15.0)) <= 1e-9
        assert abs(report.effect_second) <= 1e-9
