"""Shared fixtures for the test suite.

The acceptance tests register a one-line verdict per criterion through
:func:`note`; the lines are echoed in the terminal summary so a plain
``pytest -v`` run ends with a readable scoreboard.
"""

import itertools

import pytest

from mpdagid import Graph, GraphClass, enumerate_dags

acceptance_lines: list[str] = []


def note(line: str) -> None:
    acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.write_line(line)


_STATES = ("none", "ab", "ba", "und")


@pytest.fixture(scope="session")
def battery():
    """Every MPDAG (including DAGs) on four nodes, with its DAG class.

    All 4^6 assignments of {absent, ->, <-, --} to the six node pairs are
    generated and the ones that are not maximally oriented are dropped.
    """
    nodes = ["N0", "N1", "N2", "N3"]
    pairs = list(itertools.combinations(nodes, 2))
    graphs = []
    for states in itertools.product(range(4), repeat=len(pairs)):
        directed, undirected = [], []
        for (a, b), s in zip(pairs, states):
            if _STATES[s] == "ab":
                directed.append((a, b))
            elif _STATES[s] == "ba":
                directed.append((b, a))
            elif _STATES[s] == "und":
                undirected.append((a, b))
        g = Graph(nodes, directed, undirected)
        if g.classify() is not GraphClass.PDAG:
            graphs.append(g)
    return [(g, enumerate_dags(g)) for g in graphs]
