import numpy as np
import pytest

from perronbound.errors import InputError, SamplingError
from perronbound.generators import (enumerate_connected, graph_from_mask, named_graph,
                                    pair_order, random_connected)
from perronbound.graph import Graph, is_connected, is_regular

from conftest import brute_force_connected_count


def test_named_graph_examples():
    k4 = named_graph("complete", 4)
    assert k4.edge_count == 6 and is_regular(k4) == 3
    assert named_graph("star", 5).degrees() == (4, 1, 1, 1, 1)
    c4 = named_graph("cycle", 4)
    assert c4.n == 4 and is_regular(c4) == 2


@pytest.mark.parametrize("family, n", [("cycle", 2), ("cycle", 1), ("path", 0), ("wheel", 5)])
def test_named_graph_errors(family, n):
    with pytest.raises(InputError):
        named_graph(family, n)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_enumeration_count_matches_brute_force(n):
    assert sum(1 for _ in enumerate_connected(n)) == brute_force_connected_count(n)


def test_enumeration_examples():
    assert list(enumerate_connected(2)) == [named_graph("complete", 2)]
    three = list(enumerate_connected(3))
    assert len(three) == 4
    assert sum(g.edge_count == 2 for g in three) == 3


def test_enumeration_is_unique_connected_and_ordered():
    gs = list(enumerate_connected(4))
    assert len(gs) == 38 == len(set(gs))
    assert all(is_connected(g) for g in gs)
    pairs = pair_order(4)
    masks = [sum(1 << pairs.index(e) for e in g.edges) for g in gs]
    assert masks == sorted(masks)


def test_enumeration_cap():
    with pytest.raises(InputError, match="graph6"):
        next(enumerate_connected(8))
    assert next(enumerate_connected(3, cap=3)).n == 3


def test_graph_from_mask_pair_order():
    assert pair_order(4)[:4] == [(0, 1), (0, 2), (1, 2), (0, 3)]
    assert graph_from_mask(3, 0b111) == named_graph("complete", 3)
    with pytest.raises(InputError):
        graph_from_mask(3, 1 << 3)


def test_random_connected_examples():
    assert random_connected(5, 1.0, 123) == named_graph("complete", 5)
    assert random_connected(2, 0.5, 7) == named_graph("complete", 2)
    a = random_connected(12, 0.3, 99)
    assert a == random_connected(12, 0.3, 99)
    assert is_connected(a)


def test_random_connected_documented_generator():
    # first attempt reproduces the documented PCG64 draw pattern
    rng = np.random.Generator(np.random.PCG64(5))
    keep = rng.random(len(pair_order(6))) < 0.9
    expected = [p for p, k in zip(pair_order(6), keep) if k]
    assert is_connected(Graph(6, tuple(expected)))
    assert list(random_connected(6, 0.9, 5).edges) == sorted(expected)


def test_random_connected_errors():
    with pytest.raises(SamplingError):
        random_connected(3, 0.0, 1, max_attempts=1000)
    with pytest.raises(InputError):
        random_connected(3, 1.5, 1)
    assert random_connected(1, 0.0, 1).n == 1


def test_different_seeds_differ():
    samples = {random_connected(10, 0.4, s) for s in range(5)}
    assert len(samples) > 1
