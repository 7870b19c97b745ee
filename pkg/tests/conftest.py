"""Shared test helpers: an independent geometry oracle and network builders."""

import numpy as np

from abcdoo.metrics import LabeledNetwork


def naive_layout(points, primary_sizes, grown_sizes):
    """O(n^2) reference for seeding and growth, written against full sorts.

    Returns (primary_of, primary_members, grown_members). Candidate order is
    (squared distance, element id), matching the documented tie-break.
    """
    points = np.asarray(points, dtype=float)
    n = len(points)
    active = np.ones(n, dtype=bool)
    norms = np.einsum("ij,ij->i", points, points)
    primary_of = np.full(n, -1, dtype=np.int64)
    primary_members = []
    for j, size in enumerate(primary_sizes):
        ids = np.flatnonzero(active)
        seed = ids[np.lexsort((ids, -norms[ids]))[0]]
        diffs = points[ids] - points[seed]
        d2 = np.einsum("ij,ij->i", diffs, diffs)
        order = np.lexsort((ids, d2))
        chosen = ids[order[: int(size)]]
        primary_of[chosen] = j
        active[chosen] = False
        primary_members.append(chosen)

    grown_members = []
    for j, prim in enumerate(primary_members):
        target = min(int(grown_sizes[j]), n)
        need = target - len(prim)
        if need <= 0:
            grown_members.append(prim.copy())
            continue
        centroid = points[prim].mean(axis=0)
        diffs = points - centroid
        d2 = np.einsum("ij,ij->i", diffs, diffs)
        order = np.lexsort((np.arange(n), d2))
        in_prim = np.zeros(n, dtype=bool)
        in_prim[prim] = True
        extras = order[~in_prim[order]][:need]
        grown_members.append(np.concatenate([prim, extras]))
    return primary_of, primary_members, grown_members


def labeled(n, edges, memberships, provenance=None):
    """Build a LabeledNetwork from plain lists.

    memberships: per node, an iterable of 0-based community indices.
    """
    comms = [np.array(sorted(m), dtype=np.int64) for m in memberships]
    count = max((int(c.max()) + 1 for c in comms if len(c)), default=0)
    members = [[] for _ in range(count)]
    for v, cs in enumerate(comms):
        for c in cs.tolist():
            members[c].append(v)
    edges = np.array(sorted(tuple(sorted(e)) for e in edges), dtype=np.int64).reshape(-1, 2)
    return LabeledNetwork(
        n=n,
        edges=edges,
        node_communities=comms,
        community_members=[np.array(m, dtype=np.int64) for m in members],
        community_labels=np.arange(1, count + 1, dtype=np.int64),
        provenance=None if provenance is None else np.asarray(provenance, dtype=np.int64),
    )


def clique_edges(nodes):
    nodes = list(nodes)
    return [(u, v) for i, u in enumerate(nodes) for v in nodes[i + 1 :]]
