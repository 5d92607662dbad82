import random

import pytest

from mpdagid import (GraphError, bucket_decomposition, parse_graph_text, pco,
                     random_mpdag, undirected_components)

from cases import fraction_graph, marginal_graph


def test_undirected_components():
    g = parse_graph_text("A -- B\nB -- C\nD -> A\nnode E\n")
    assert undirected_components(g) == [{"A", "B", "C"}, {"D"}, {"E"}]


def test_bucket_decomposition():
    g = parse_graph_text("A -- B\nB -- C\nD -> A\nnode E\n")
    assert bucket_decomposition(g, {"B", "C", "E"}) == [{"B", "C"}, {"E"}]


class TestPco:
    def test_fraction_graph_ordering(self):
        g = fraction_graph()
        assert pco(g, ("V1", "Z", "Y")) == [("V1",), ("Z", "Y")]
        assert pco(g, ("V1", "Z")) == [("V1",), ("Z",)]

    def test_marginal_graph_ordering(self):
        g = marginal_graph()
        # ancestors of Y with X cut away, minus the conditioning node
        assert pco(g, ("V2", "Y")) == [("V2",), ("Y",)]

    def test_all_nodes(self):
        g = parse_graph_text("A -> B\nB -- C\n")
        order = pco(g, g.nodes)
        assert order == [("A",), ("B", "C")]

    def test_subset_of_component(self):
        # the bucket is the intersection, not the whole component
        g = parse_graph_text("A -- B\nB -- C\nA -- C\nD -> A\n")
        assert pco(g, ("B", "D")) == [("D",), ("B",)]

    def test_no_sink_component_raises(self):
        from mpdagid import Graph
        cyclic = Graph(["A", "B", "C"],
                       directed=[("A", "B"), ("B", "C"), ("C", "A")])
        with pytest.raises(GraphError):
            pco(cyclic, ("A", "B", "C"))

    def test_properties_on_random_graphs(self):
        rng = random.Random(19)
        for _ in range(120):
            g = random_mpdag(rng, [f"N{i}" for i in range(6)], 0.45)
            vs = [v for v in g.nodes if rng.random() < 0.7]
            buckets = pco(g, vs)
            flat = [v for b in buckets for v in b]
            assert sorted(flat) == sorted(set(vs))
            comps = undirected_components(g)
            for bucket in buckets:
                assert any(set(bucket) <= c for c in comps)
            # directed edges across buckets respect the output order
            position = {v: i for i, b in enumerate(buckets) for v in b}
            for a, b in g.directed_edges:
                if a in position and b in position:
                    assert position[a] <= position[b]
