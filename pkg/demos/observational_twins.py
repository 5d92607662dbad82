"""Two linear Gaussian models that agree observationally but not under
intervention.

Each pair below lives on two different DAGs from the same class.  The
models are tuned so their observational covariance matrices coincide
exactly, yet E[Y | do(X=1), Z=0] differs.  No procedure that only sees
the class graph and the observational law can return a single correct
answer for these queries, which is exactly why the identification
routine refuses them.  Run with ``python3 demos/observational_twins.py``.
"""

import numpy as np

from mpdagid import LinearGaussianSem, parse_graph_text, verify_counterexample


def show(title, graph_text, first, first_label, second, second_label):
    graph = parse_graph_text(graph_text)
    report = verify_counterexample(graph, first, second,
                                   {"X": 1.0}, "Y", {"Z": 0.0})
    print(f"== {title}")
    print(f"   covariance gap between the two models: "
          f"{report.covariance_gap:.2e}")
    print(f"   E[Y | do(X=1), Z=0] under {first_label}: "
          f"{report.effect_first:+.4f}")
    print(f"   E[Y | do(X=1), Z=0] under {second_label}: "
          f"{report.effect_second:+.4f}")
    print(f"   effect gap: {report.effect_gap:.4f}")
    print()


def main() -> None:
    text1 = "X -- Z\nZ -> Y\nV1 -> X\nV1 -> Z\nV1 -> Y\nX -> Y\n"
    g1 = parse_graph_text(text1)
    first1 = LinearGaussianSem(
        g1.orient("X", "Z"),
        {("V1", "X"): 0.5, ("V1", "Z"): 0.5, ("V1", "Y"): 0.5,
         ("X", "Z"): 0.5, ("X", "Y"): 0.0, ("Z", "Y"): 0.0},
        {"V1": 1.0, "X": 0.75, "Z": 0.25, "Y": 0.75})
    second1 = LinearGaussianSem(
        g1.orient("Z", "X"),
        {("V1", "X"): -1 / 7, ("V1", "Z"): 0.75, ("V1", "Y"): 0.5,
         ("Z", "X"): 6 / 7, ("X", "Y"): 0.0, ("Z", "Y"): 0.0},
        {"V1": 1.0, "X": 3 / 7, "Z": 7 / 16, "Y": 0.75})
    show("conditioning on a possible descendant of the treatment",
         text1, first1, "X -> Z", second1, "Z -> X")

    text2 = "X -- V1\nV1 -> Z\nY -> Z\nX -> Y\n"
    g2 = parse_graph_text(text2)
    first2 = LinearGaussianSem(
        g2.orient("X", "V1"),
        {("X", "V1"): 0.5, ("V1", "Z"): 0.5, ("Y", "Z"): 0.5,
         ("X", "Y"): 0.0},
        {"X": 1.0, "V1": 0.75, "Z": 0.5, "Y": 1.0})
    second2 = LinearGaussianSem(
        g2.orient("V1", "X"),
        {("V1", "X"): 0.5, ("V1", "Z"): 0.5, ("Y", "Z"): 0.5,
         ("X", "Y"): 0.0},
        {"V1": 1.0, "X": 0.75, "Z": 0.5, "Y": 1.0})
    show("collider conditioning with an ambiguous treatment parent",
         text2, first2, "X -> V1", second2, "V1 -> X")

    cov = first1.covariance()
    print("observational covariance shared by the first pair "
          f"(order {', '.join(first1.dag.nodes)}):")
    print(np.array_str(cov, precision=4, suppress_small=True))


if __name__ == "__main__":
    main()
