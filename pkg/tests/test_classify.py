import random

import pytest

from coxstar.classify import EXCLUDED_SHAPES, classify_star_reducible, counterexample_word
from coxstar.elements import fc_element, is_reduced_fc, tits_is_reduced
from coxstar.graph import GraphError, family_graph, graph_from_edges
from coxstar.star import is_commuting_product, star_reduce_path

from conftest import random_graph


def _path(labels):
    return graph_from_edges(len(labels) + 1, [(i, i + 1, m) for i, m in enumerate(labels)])


def _zero_based(word):
    return tuple(s - 1 for s in word)


def _verify(g, word):
    assert tits_is_reduced(g, word)
    assert is_reduced_fc(g, word)
    w = fc_element(g, word)
    assert not is_commuting_product(w)
    assert star_reduce_path(w) is None


def test_known_words():
    g = _path([3, 6])
    assert counterexample_word(g) == _zero_based([1, 3, 2, 3, 2, 1, 3])
    g = _path([3, 5, 3])
    assert counterexample_word(g) == _zero_based([1, 3, 2, 3, 2, 4])
    g = _path([3, 3, 4, 3, 3, 3])
    expected = [3, 5, 7, 4, 6, 3, 5, 2, 4, 1, 3, 2, 4, 3, 5, 4, 6, 3, 5, 7]
    assert counterexample_word(g) == _zero_based(expected)


# one graph per excluded shape, with the 1-based word the shape must produce
SHAPES = {
    "fork_far_label": (graph_from_edges(4, [(0, 2, 3), (1, 2, 3), (2, 3, 4)]), [1, 2, 3, 4, 3, 1, 2]),
    "odd_cycle_raised": (graph_from_edges(5, [(0, 1, 3), (1, 2, 3), (2, 3, 3), (3, 4, 3), (4, 0, 4)]),
                         [2, 5, 1, 5, 4, 3, 2, 1, 5, 4, 1]),
    "path_label_ge6": (_path([3, 6]), [1, 3, 2, 3, 2, 1, 3]),
    "path_interior_5": (_path([3, 5, 3]), [1, 3, 2, 3, 2, 4]),
    "path_5_plus_raised": (_path([5, 3, 4]), None),
    "path_two_4_one_interior": (_path([3, 4, 3, 4]), None),
    "path_extremal_4s_even_gap": (_path([4, 3, 3, 4]), [1, 3, 5, 2, 4, 1, 3, 5]),
    "path7_interior_4": (_path([3, 3, 4, 3, 3, 3]), [3, 5, 7, 4, 6, 3, 5, 2, 4, 1, 3, 2, 4, 3, 5, 4, 6, 3, 5, 7]),
}


def test_registry_is_complete():
    assert set(SHAPES) == set(EXCLUDED_SHAPES)


@pytest.mark.parametrize("shape", sorted(SHAPES))
def test_excluded_shape_witness(shape):
    g, expected = SHAPES[shape]
    assert not classify_star_reducible(g).ok
    word = counterexample_word(g)
    assert word is not None
    if expected is not None:
        assert word == _zero_based(expected)
    _verify(g, word)


def test_counterexample_errors():
    with pytest.raises(GraphError):
        counterexample_word(family_graph("B3"))
    with pytest.raises(GraphError):
        counterexample_word(graph_from_edges(3, [(0, 1, 6)]))


def test_random_rejected_graphs_have_valid_words():
    rng = random.Random(17)
    found = 0
    for _ in range(400):
        n = rng.randint(3, 7)
        shape = rng.choice(["path", "cycle", "fork"])
        if shape == "path":
            edges = [(i, i + 1, 3) for i in range(n - 1)]
        elif shape == "cycle":
            n = rng.choice([5, 7])
            edges = [(i, (i + 1) % n, 3) for i in range(n)]
        else:
            n = max(n, 4)
            edges = [(0, 2, 3), (1, 2, 3)] + [(i, i + 1, 3) for i in range(2, n - 1)]
        edges = [(i, j, rng.choice([3, 3, 3, 4, 5, 6])) for i, j, _ in edges]
        g = graph_from_edges(n, edges)
        if classify_star_reducible(g).ok:
            continue
        word = counterexample_word(g)
        if word is not None:
            _verify(g, word)
            found += 1
    assert found > 100


def test_verdict_json():
    g = graph_from_edges(5, [(0, 1, 3), (2, 3, 6), (3, 4, 3)])
    v = classify_star_reducible(g)
    data = v.to_json()
    assert data["star_reducible"] is False
    assert [c["star_reducible"] for c in data["components"]] == [True, False]
    assert data["components"][1]["counterexample"] is not None
    assert not v
