"""Local and global rewiring of loops and duplicate edges."""

from collections import Counter

import numpy as np
import pytest

from abcdoo.errors import GenerationError
from abcdoo.rewiring import (
    collect_offenders,
    global_rewire,
    rewire_component,
)


def degree_profile(edges):
    deg = Counter()
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    return deg


def test_collect_offenders_hand_cases():
    edges = [(0, 1), (1, 2)]
    assert collect_offenders(edges, Counter(edges)) == []
    edges = [(0, 0), (0, 1), (0, 1)]
    assert collect_offenders(edges, Counter(edges)) == [0, 2]
    edges = [(2, 3), (2, 3), (2, 3)]
    assert collect_offenders(edges, Counter(edges)) == [1, 2]


def test_rewire_component_leaves_simple_graphs_alone():
    edges = [(0, 1), (1, 2), (0, 2)]
    kept, leftovers, stats = rewire_component(edges, np.random.default_rng(0))
    assert sorted(kept) == sorted(edges)
    assert leftovers == []
    assert stats.initial_offenders == 0


def test_rewire_component_fixes_loop_against_path():
    # loop (c,c) crossed with (a,b) must yield {a,c},{b,c} whichever way it splits
    for seed in range(20):
        kept, leftovers, _ = rewire_component(
            [(0, 1), (2, 2)], np.random.default_rng(seed)
        )
        assert leftovers == []
        assert sorted(kept) == [(0, 2), (1, 2)]


def test_rewire_component_lone_loop_is_a_leftover():
    kept, leftovers, stats = rewire_component([(5, 5)], np.random.default_rng(1))
    assert kept == []
    assert leftovers == [(5, 5)]
    assert stats.leftovers == 1


def test_rewire_component_preserves_degrees_and_simplicity():
    rng = np.random.default_rng(2)
    for trial in range(30):
        nodes = rng.integers(0, 12, size=(40, 2))
        edges = [tuple(sorted(e)) for e in nodes.tolist()]
        kept, leftovers, _ = rewire_component(edges, rng)
        # kept + leftovers carry exactly the original half-edges
        before = degree_profile(edges)
        after = degree_profile(kept + leftovers)
        assert before == after
        assert len(set(kept)) == len(kept)
        assert all(u != v for u, v in kept)


def test_global_rewire_merge_keeps_first_copy_and_recycles_cross_duplicates():
    components = [([(0, 1), (2, 3)], 1), ([(0, 1), (4, 5)], 2)]
    edges, tags, stats = global_rewire(components, [], np.random.default_rng(3))
    assert stats.cross_duplicates == 1
    pairs = set(zip(edges, tags))
    assert ((0, 1), 1) in pairs  # the copy from the first component survives in place
    assert len(set(edges)) == len(edges)
    assert degree_profile(edges) == degree_profile([(0, 1), (2, 3), (0, 1), (4, 5)])


def test_global_rewire_repairs_leftover_loop():
    components = [([(0, 1), (2, 3), (4, 5)], 0)]
    leftovers = [((6, 6), 2)]
    edges, tags, _ = global_rewire(components, leftovers, np.random.default_rng(4))
    assert len(set(edges)) == len(edges)
    assert all(u != v for u, v in edges)
    assert degree_profile(edges) == degree_profile(
        [(0, 1), (2, 3), (4, 5), (6, 6)]
    )
    assert sorted(tags) == [0, 0, 0, 2]


def test_global_rewire_no_work_passthrough():
    components = [([(0, 1)], 7)]
    edges, tags, stats = global_rewire(components, [], np.random.default_rng(5))
    assert edges == [(0, 1)]
    assert tags == [7]
    assert stats.list_size == 0
    assert stats.accepts == 0


def test_global_rewire_aborts_when_unrealizable():
    # two copies of the same edge and nothing else to cross with
    components = [([], 0)]
    leftovers = [((0, 1), 0), ((0, 1), 1)]
    with pytest.raises(GenerationError):
        global_rewire(components, leftovers, np.random.default_rng(6))


def test_global_rewire_conserves_degrees_at_scale():
    rng = np.random.default_rng(7)
    raw = rng.integers(0, 25, size=(150, 2))
    edges = [tuple(sorted(e)) for e in raw.tolist()]
    kept, leftovers, _ = rewire_component(edges, rng)
    out, tags, _ = global_rewire([(kept, 1)], [(e, 1) for e in leftovers], rng)
    assert degree_profile(out) == degree_profile(edges)
    assert len(set(out)) == len(out)
    assert all(u != v for u, v in out)
    assert len(tags) == len(out)
