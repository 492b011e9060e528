import itertools
import random

from hypothesis import strategies as st

from coxstar.graph import INF, graph_from_edges

LABELS = (2, 2, 3, 4, 5, 6, INF)


def random_graph(rng: random.Random, rank: int, labels=LABELS):
    edges = [(i, j, rng.choice(labels)) for i, j in itertools.combinations(range(rank), 2)]
    return graph_from_edges(rank, edges)


@st.composite
def graphs(draw, max_rank=5):
    rank = draw(st.integers(1, max_rank))
    edges = [(i, j, draw(st.sampled_from(LABELS))) for i, j in itertools.combinations(range(rank), 2)]
    return graph_from_edges(rank, edges)


@st.composite
def graph_and_word(draw, max_rank=5, max_len=8):
    g = draw(graphs(max_rank))
    w = draw(st.lists(st.integers(0, g.rank - 1), max_size=max_len))
    return g, tuple(w)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
