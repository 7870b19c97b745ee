"""Bipartite community-affiliation baseline.

Nodes and communities each draw half-edge counts from truncated power
laws; a uniform random bipartite matching of the half-edges yields the
memberships. Only the affiliation structure is produced, no edges.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .sampling import PowerLawSpec, sample_tpl, tpl_mean


@dataclass(frozen=True)
class CkbSpec:
    n: int
    membership_law: PowerLawSpec  # memberships per node
    size_law: PowerLawSpec  # members per community
    seed: int = 0

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 0:
            raise ValidationError("node count n must be a non-negative integer")


def ckb_community_count(spec: CkbSpec) -> int:
    """floor(n * E[memberships per node] / E[members per community])."""
    return int(spec.n * tpl_mean(spec.membership_law) / tpl_mean(spec.size_law))


@dataclass
class CkbAffiliation:
    node_memberships: list  # node -> sorted community indices (0-based)
    community_members: list  # community -> sorted node ids
    node_half_edges: np.ndarray  # pre-collapse membership draws, per node
    stats: dict

    @property
    def community_count(self) -> int:
        return len(self.community_members)


def generate_ckb(spec: CkbSpec, rng: np.random.Generator | None = None) -> CkbAffiliation:
    if rng is None:
        rng = np.random.default_rng(np.random.SeedSequence(spec.seed))
    count = ckb_community_count(spec)
    stats = {
        "communities": count,
        "adjustment_added": 0,
        "adjustment_side": "none",
        "duplicates_collapsed": 0,
        "half_edges": 0,
    }
    if spec.n == 0 or count == 0:
        return CkbAffiliation(
            [np.zeros(0, dtype=np.int64) for _ in range(spec.n)],
            [np.zeros(0, dtype=np.int64) for _ in range(count)],
            np.zeros(spec.n, dtype=np.int64),
            stats,
        )

    node_counts = sample_tpl(spec.membership_law, rng, spec.n)
    comm_counts = sample_tpl(spec.size_law, rng, count)
    deficit = int(node_counts.sum() - comm_counts.sum())
    if deficit > 0:
        bumps = rng.integers(0, count, size=deficit)
        np.add.at(comm_counts, bumps, 1)
        stats["adjustment_added"] = deficit
        stats["adjustment_side"] = "community"
    elif deficit < 0:
        bumps = rng.integers(0, spec.n, size=-deficit)
        np.add.at(node_counts, bumps, 1)
        stats["adjustment_added"] = -deficit
        stats["adjustment_side"] = "node"
    total = int(node_counts.sum())
    stats["half_edges"] = total

    node_stubs = np.repeat(np.arange(spec.n, dtype=np.int64), node_counts)
    comm_stubs = np.repeat(np.arange(count, dtype=np.int64), comm_counts)
    comm_stubs = rng.permutation(comm_stubs)
    keys = np.unique(node_stubs * count + comm_stubs)
    stats["duplicates_collapsed"] = total - int(keys.size)

    nodes = keys // count
    comms = keys % count
    splits = np.searchsorted(nodes, np.arange(1, spec.n))
    memberships = np.split(comms, splits)
    by_comm = np.argsort(comms, kind="stable")
    splits = np.searchsorted(comms[by_comm], np.arange(1, count))
    members = np.split(nodes[by_comm], splits)
    return CkbAffiliation(
        memberships, [np.sort(m) for m in members], node_counts, stats
    )
