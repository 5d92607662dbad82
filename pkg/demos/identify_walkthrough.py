"""Identify conditional interventional densities on a few small graphs.

Walks from a fully directed chain to a graph where the query is not
identifiable, printing the closed-form expression (or the failure
certificate) for each.  Run with ``python3 demos/identify_walkthrough.py``.
"""

from mpdagid import (NotIdentifiable, cidm, graph_to_text, parse_graph_text,
                     render_latex, render_text)

QUERIES = [
    ("chain with an undirected treatment edge",
     "X -- Z\nZ -> Y\n", ("X",), ("Y",), ("Z",)),
    ("treatment inside an undirected component",
     "X -> Y\nV1 -- V3\nV3 -> X\nV1 -- V2\nV2 -> X\nV2 -> Y\n"
     "V1 -> X\nV1 -> Y\n", ("X",), ("Y",), ("V1",)),
    ("two treatments, one on a directed path into the other",
     "X1 -> V1\nV1 -> Y\nV1 -> X2\nX2 -> Y\nV2 -> X1\nV2 -> Y\n",
     ("X1", "X2"), ("Y",), ("V2",)),
    ("conditioning node downstream of the treatment",
     "X -> Z\nZ -- Y\nV1 -> X\nV1 -> Z\nV1 -> Y\nX -> Y\n",
     ("X",), ("Y",), ("Z",)),
    ("same graph with the treatment edge left undirected",
     "X -- Z\nZ -> Y\nV1 -> X\nV1 -> Z\nV1 -> Y\nX -> Y\n",
     ("X",), ("Y",), ("Z",)),
]


def main() -> None:
    for title, text, x, y, z in QUERIES:
        graph = parse_graph_text(text)
        print(f"== {title}")
        for line in graph_to_text(graph).splitlines():
            print(f"   {line}")
        query = f"f({','.join(y).lower()} | do({','.join(x).lower()})" \
                + (f", {','.join(z).lower()})" if z else ")")
        try:
            expr = cidm(graph, x, y, z)
        except NotIdentifiable as exc:
            cert = exc.certificate
            print(f"   {query} is NOT identifiable")
            print(f"   offending path: {' - '.join(cert.offending_path)}")
            if cert.dsep_failure is not None:
                fail = cert.dsep_failure
                print(f"   {fail.picked} cannot be absorbed: open path "
                      f"{' - '.join(fail.open_path.path)} given "
                      f"{{{','.join(fail.conditioning)}}}")
        else:
            print(f"   {query} = {render_text(expr)}")
            print(f"   latex: {render_latex(expr)}")
        print()


if __name__ == "__main__":
    main()
