"""Degree split, quota allocation, parity repair, and configuration models."""

import numpy as np
import pytest

from abcdoo.edges import (
    DegreeSplit,
    allocate_community_halfedges,
    assemble_union,
    check_quota_capacity,
    configuration_model,
    fix_parity,
    split_degrees,
)
from abcdoo.errors import GenerationError


def test_split_degrees_extremes():
    degrees = np.array([10, 7, 4], dtype=np.int64)
    none = np.zeros(3, dtype=bool)
    rng = np.random.default_rng(0)
    pure = split_degrees(degrees, none, 0.0, rng)
    assert pure.community_degree.tolist() == [10, 7, 4]
    assert pure.background_degree.tolist() == [0, 0, 0]
    noise = split_degrees(degrees, none, 1.0, rng)
    assert noise.community_degree.tolist() == [0, 0, 0]
    assert noise.background_degree.tolist() == [10, 7, 4]


def test_split_degrees_integer_case_and_conservation():
    degrees = np.array([10], dtype=np.int64)
    split = split_degrees(degrees, np.zeros(1, dtype=bool), 0.3, np.random.default_rng(1))
    assert split.community_degree[0] == 7
    assert split.background_degree[0] == 3
    # fractional case: Y averages (1-xi) d over many draws
    rng = np.random.default_rng(2)
    ys = [
        split_degrees(np.array([7]), np.zeros(1, dtype=bool), 0.5, rng).community_degree[0]
        for _ in range(4000)
    ]
    assert set(ys) == {3, 4}
    assert abs(np.mean(ys) - 3.5) < 0.05


def test_split_degrees_outliers_are_pure_background():
    degrees = np.array([10, 10], dtype=np.int64)
    mask = np.array([True, False])
    split = split_degrees(degrees, mask, 0.0, np.random.default_rng(3))
    assert split.community_degree.tolist() == [0, 10]
    assert split.background_degree.tolist() == [10, 0]


def make_split(y, memberships_per_node, members, rng):
    y = np.asarray(y, dtype=np.int64)
    split = DegreeSplit(y.copy(), np.zeros(len(y), dtype=np.int64))
    allocate_community_halfedges(
        split,
        [np.array(c, dtype=np.int64) for c in memberships_per_node],
        [np.array(m, dtype=np.int64) for m in members],
        rng,
    )
    return split


def test_allocate_quotas_spread_evenly():
    # one node in 3 communities: Y=7 -> quotas {3,2,2} in some order, Y=6 -> 2,2,2
    members = [[0], [0], [0]]
    split = make_split([7], [[0, 1, 2]], members, np.random.default_rng(4))
    vals = sorted(int(split.quotas[j][0]) for j in range(3))
    assert vals == [2, 2, 3]
    split = make_split([6], [[0, 1, 2]], members, np.random.default_rng(5))
    assert [int(split.quotas[j][0]) for j in range(3)] == [2, 2, 2]


def test_allocate_single_membership_gets_everything():
    split = make_split([9], [[0]], [[0]], np.random.default_rng(6))
    assert int(split.quotas[0][0]) == 9


def test_allocate_remainder_lands_uniformly():
    # Y=1 over two communities: each should get the spare half-edge about half the time
    rng = np.random.default_rng(7)
    first = [
        int(make_split([1], [[0, 1]], [[0], [0]], rng).quotas[0][0]) for _ in range(4000)
    ]
    assert abs(np.mean(first) - 0.5) < 0.03


def test_allocate_aligns_quotas_with_member_lists():
    # two communities sharing node 1; quotas must follow the member ordering
    members = [[0, 1], [1, 2]]
    split = make_split([4, 6, 2], [[0], [0, 1], [1]], members, np.random.default_rng(8))
    assert int(split.quotas[0][0]) == 4
    assert int(split.quotas[1][1]) == 2
    assert int(split.quotas[0][1]) + int(split.quotas[1][0]) == 6
    total = sum(int(q.sum()) for q in split.quotas)
    assert total == 12


def test_fix_parity_takes_from_smallest_eligible_id():
    members = [[0, 1, 2]]
    split = DegreeSplit(
        np.array([3, 2, 2], dtype=np.int64), np.zeros(3, dtype=np.int64)
    )
    split.quotas = [np.array([3, 2, 2], dtype=np.int64)]
    fix_parity(split, [np.array(m) for m in members])
    assert split.parity_fixes == 1
    assert split.quotas[0].tolist() == [2, 2, 2]
    assert split.community_degree.tolist() == [2, 2, 2]
    assert split.background_degree.tolist() == [1, 0, 0]


def test_fix_parity_skips_zero_quota_members():
    members = [[0, 1]]
    split = DegreeSplit(
        np.array([0, 3], dtype=np.int64), np.zeros(2, dtype=np.int64)
    )
    split.quotas = [np.array([0, 3], dtype=np.int64)]
    fix_parity(split, [np.array(m) for m in members])
    assert split.quotas[0].tolist() == [0, 2]
    assert split.background_degree.tolist() == [0, 1]


def test_fix_parity_leaves_even_communities_alone():
    split = DegreeSplit(
        np.array([2, 2], dtype=np.int64), np.zeros(2, dtype=np.int64)
    )
    split.quotas = [np.array([2, 2], dtype=np.int64)]
    fix_parity(split, [np.array([0, 1])])
    assert split.parity_fixes == 0
    assert split.quotas[0].tolist() == [2, 2]


def test_quota_capacity_violation_raises():
    # a quota of 2 inside a 2-member community exceeds size - 1
    split = DegreeSplit(
        np.array([2, 0], dtype=np.int64), np.zeros(2, dtype=np.int64)
    )
    split.quotas = [np.array([2, 0], dtype=np.int64)]
    with pytest.raises(GenerationError):
        check_quota_capacity(split, [np.array([0, 1])])
    split.quotas = [np.array([1, 1], dtype=np.int64)]
    check_quota_capacity(split, [np.array([0, 1])])


def test_configuration_model_forced_outcomes():
    edges = configuration_model(
        np.array([4, 9]), np.array([1, 1]), np.random.default_rng(9)
    )
    assert sorted(edges[0].tolist()) == [4, 9]
    loop = configuration_model(np.array([3]), np.array([2]), np.random.default_rng(10))
    assert loop.tolist() == [[3, 3]]


def test_configuration_model_conserves_degrees():
    rng = np.random.default_rng(11)
    nodes = np.arange(30)
    degrees = rng.integers(0, 8, size=30)
    if degrees.sum() % 2:
        degrees[0] += 1
    edges = configuration_model(nodes, degrees, rng)
    realized = np.bincount(edges.ravel(), minlength=30)
    assert realized.tolist() == degrees.tolist()


def test_configuration_model_rejects_odd_total():
    with pytest.raises(AssertionError):
        configuration_model(np.array([0]), np.array([3]), np.random.default_rng(12))


def test_assemble_union_tags_components():
    a = np.array([[0, 1], [1, 2]], dtype=np.int64)
    b = np.array([[3, 4]], dtype=np.int64)
    edges, prov = assemble_union([a, np.zeros((0, 2), dtype=np.int64), b], [1, 2, 0])
    assert edges.tolist() == [[0, 1], [1, 2], [3, 4]]
    assert prov.tolist() == [1, 1, 0]
    empty_edges, empty_prov = assemble_union([], [])
    assert empty_edges.shape == (0, 2)
    assert empty_prov.shape == (0,)
