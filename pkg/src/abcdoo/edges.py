"""Degree splitting and configuration-model edge construction.

Each non-outlier degree d_i is split into a community part Y_i and a
background part Z_i; the community part is spread as evenly as possible over
the node's communities, each community fixes its half-edge parity, and every
community plus the background runs an independent configuration model. The
union keeps per-edge provenance tags: community id (1-based) or 0 for
background.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GenerationError
from .sampling import random_round


@dataclass
class DegreeSplit:
    community_degree: np.ndarray  # Y per node
    background_degree: np.ndarray  # Z per node
    # quota arrays are aligned with the community member lists
    quotas: list = field(default_factory=list)
    parity_fixes: int = 0


def split_degrees(
    degrees: np.ndarray, outlier_mask: np.ndarray, xi: float, rng: np.random.Generator
) -> DegreeSplit:
    """Y_i = random_round((1-xi) d_i) for non-outliers; outliers are all background."""
    y = np.zeros(len(degrees), dtype=np.int64)
    non = ~outlier_mask
    y[non] = random_round((1.0 - xi) * degrees[non], rng)
    z = degrees - y
    return DegreeSplit(y, z)


def allocate_community_halfedges(
    split: DegreeSplit,
    node_communities: list,
    members: list,
    rng: np.random.Generator,
) -> None:
    """Spread Y_i over node i's communities, quotas differing by at most one.

    node_communities: node -> array of community indices (ascending).
    members: community -> array of member node ids; split.quotas is filled
    aligned with these lists.
    """
    n = len(node_communities)
    y = split.community_degree
    counts = np.array([len(c) for c in node_communities], dtype=np.int64)
    starts = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=starts[1:])
    safe = np.maximum(counts, 1)
    base = y // safe
    rem = y - base * counts
    # node-major flat layout mirroring node_communities
    flat_quota = np.repeat(base, counts)
    for i in np.flatnonzero(rem > 0):
        bump = rng.choice(int(counts[i]), size=int(rem[i]), replace=False)
        flat_quota[starts[i] + bump] += 1

    if not members:
        split.quotas = []
        return
    flat_node = np.repeat(np.arange(n, dtype=np.int64), counts)
    flat_comm = np.concatenate([np.asarray(c, dtype=np.int64) for c in node_communities])
    order = np.argsort(flat_comm, kind="stable")  # per community, nodes stay ascending
    comm_sizes = np.zeros(len(members), dtype=np.int64)
    np.add.at(comm_sizes, flat_comm, 1)
    bounds = np.cumsum(comm_sizes)[:-1]
    nodes_by_comm = np.split(flat_node[order], bounds)
    quota_by_comm = np.split(flat_quota[order], bounds)
    quotas = []
    for j, mem in enumerate(members):
        idx = np.searchsorted(nodes_by_comm[j], mem)
        quotas.append(quota_by_comm[j][idx].astype(np.int64))
    split.quotas = quotas


def fix_parity(split: DegreeSplit, members: list) -> None:
    """Give each community an even half-edge sum by moving one half-edge of a
    maximum-degree member (ties: lowest node id) to the background."""
    fixes = 0
    for j, mem in enumerate(members):
        quota = split.quotas[j]
        if int(quota.sum()) % 2 == 0:
            continue
        # node ids are degree-ranked, so the smallest id with a positive quota
        # is the maximum-degree member that can pay
        positive = np.flatnonzero(quota > 0)
        pos = positive[np.argmin(mem[positive])]
        quota[pos] -= 1
        node = mem[pos]
        split.community_degree[node] -= 1
        split.background_degree[node] += 1
        fixes += 1
    split.parity_fixes = fixes


def check_quota_capacity(split: DegreeSplit, members: list) -> None:
    bad = 0
    for j, mem in enumerate(members):
        cap = len(mem) - 1
        bad += int(np.count_nonzero(split.quotas[j] > cap))
    if bad:
        raise GenerationError(
            f"{bad} node-community quotas exceed community size - 1; the requested "
            "degree sequence does not fit the community layout"
        )


def configuration_model(nodes: np.ndarray, degrees: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Uniform half-edge matching: shuffle the half-edge list, pair consecutive entries."""
    halves = np.repeat(nodes, degrees)
    if len(halves) % 2:
        raise AssertionError("odd half-edge count reached the configuration model")
    rng.shuffle(halves)
    return halves.reshape(-1, 2)


def assemble_union(edge_arrays: list, tags: list) -> tuple[np.ndarray, np.ndarray]:
    """Concatenate component multigraphs, keeping per-edge provenance."""
    keep = [(e, t) for e, t in zip(edge_arrays, tags) if len(e)]
    if not keep:
        return np.zeros((0, 2), dtype=np.int64), np.zeros(0, dtype=np.int64)
    edges = np.concatenate([e for e, _ in keep])
    prov = np.concatenate([np.full(len(e), t, dtype=np.int64) for e, t in keep])
    return edges, prov
