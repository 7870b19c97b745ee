"""Measurements over labeled networks.

All operations are read-only over an immutable ``LabeledNetwork`` and are
pure functions of their inputs. They work on generated networks and on
externally supplied edge/membership files alike.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .assignment import pearson_correlation
from .errors import ValidationError


@dataclass(frozen=True)
class LabeledNetwork:
    """A simple graph with known (possibly overlapping) communities."""

    n: int
    edges: np.ndarray  # (m, 2), 0-based, u < v, distinct rows
    node_communities: list  # node -> sorted dense community indices; empty = outlier
    community_members: list  # dense community index -> sorted node ids
    community_labels: np.ndarray  # dense index -> external 1-based label
    provenance: np.ndarray | None = None  # per-edge community label, 0 = background

    @property
    def community_count(self) -> int:
        return len(self.community_members)

    def degrees(self) -> np.ndarray:
        return np.bincount(self.edges.ravel(), minlength=self.n)

    def membership_counts(self) -> np.ndarray:
        return np.array([len(c) for c in self.node_communities], dtype=np.int64)

    @classmethod
    def from_generated(cls, net) -> "LabeledNetwork":
        count = len(net.community_members)
        return cls(
            n=net.params.n,
            edges=net.edges,
            node_communities=net.node_communities,
            community_members=[np.sort(m) for m in net.community_members],
            community_labels=np.arange(1, count + 1, dtype=np.int64),
            provenance=net.provenance,
        )


@dataclass(frozen=True)
class Ecdf:
    """Complementary cumulative distribution: tail[i] = P(X >= support[i])."""

    support: np.ndarray  # sorted ascending, unique
    tail: np.ndarray  # non-increasing, within [0, 1]

    @classmethod
    def from_values(cls, values) -> "Ecdf":
        values = np.asarray(values)
        if values.size == 0:
            return cls(np.zeros(0, dtype=np.int64), np.zeros(0))
        support, counts = np.unique(values, return_counts=True)
        tail = counts[::-1].cumsum()[::-1] / values.size
        return cls(support, tail)

    def evaluate(self, x) -> float:
        """P(X >= x) for an arbitrary x, zero when there is no data."""
        if self.support.size == 0:
            return 0.0
        pos = np.searchsorted(self.support, x, side="left")
        return float(self.tail[pos]) if pos < self.support.size else 0.0

    def __len__(self) -> int:
        return int(self.support.size)


def community_size_ccdf(net: LabeledNetwork) -> Ecdf:
    if net.community_count == 0:
        raise ValidationError("the network has no communities to measure")
    return Ecdf.from_values([len(m) for m in net.community_members])


def communities_per_node_ccdf(net: LabeledNetwork) -> Ecdf:
    return Ecdf.from_values(net.membership_counts())


def _kwise_overlap_sizes(net: LabeledNetwork, k: int) -> Counter:
    """Sizes of non-empty k-wise community intersections.

    A k-set of communities has a non-empty intersection iff some node
    belongs to all k, so enumerating membership combinations per node and
    counting repetitions yields the intersection sizes directly.
    """
    sizes = Counter()
    for comms in net.node_communities:
        if len(comms) >= k:
            sizes.update(itertools.combinations(comms.tolist(), k))
    return sizes


def intersection_size_ccdf(net: LabeledNetwork, k: int) -> Ecdf:
    if k < 2:
        raise ValidationError("intersection order k must be at least 2")
    return Ecdf.from_values(list(_kwise_overlap_sizes(net, k).values()))


def realized_xi(net: LabeledNetwork) -> float:
    """Fraction of edges whose endpoints share no community."""
    if len(net.edges) == 0:
        return 0.0
    sets = [set(c.tolist()) for c in net.node_communities]
    disjoint = sum(1 for u, v in net.edges.tolist() if sets[u].isdisjoint(sets[v]))
    return disjoint / len(net.edges)


def realized_rho(net: LabeledNetwork, degrees: np.ndarray | None = None) -> float:
    """Pearson correlation of degree vs membership count over non-outliers."""
    if degrees is None:
        degrees = net.degrees()
    counts = net.membership_counts()
    keep = counts > 0
    return pearson_correlation(degrees[keep], counts[keep])


@dataclass(frozen=True)
class IntersectionRecord:
    community_a: int  # external labels, a < b
    community_b: int
    size_a: int
    size_b: int
    overlap_size: int
    overlap_density: float
    density_a: float
    density_b: float


def _density(edge_count: int, node_count: int) -> float:
    if node_count < 2:
        return 0.0
    return edge_count / (node_count * (node_count - 1) / 2)


def intersection_density_profile(
    net: LabeledNetwork, min_overlap: int = 25, ratio_cap: float = 0.5
) -> list:
    """Density of each qualifying pairwise overlap vs its two communities.

    Qualifying pairs overlap in at least min_overlap nodes and in at most
    ratio_cap times the smaller community, so the overlap is never just the
    smaller community itself.
    """
    overlap_nodes = _kwise_overlap_sizes(net, 2)
    comm_edges = np.zeros(net.community_count, dtype=np.int64)
    pair_edges = Counter()
    sets = [set(c.tolist()) for c in net.node_communities]
    for u, v in net.edges.tolist():
        shared = sets[u] & sets[v]
        if not shared:
            continue
        shared = sorted(shared)
        for c in shared:
            comm_edges[c] += 1
        if len(shared) >= 2:
            pair_edges.update(itertools.combinations(shared, 2))

    comm_sizes = np.array([len(m) for m in net.community_members], dtype=np.int64)
    records = []
    for (a, b), overlap in sorted(overlap_nodes.items()):
        if overlap < min_overlap or overlap > ratio_cap * min(comm_sizes[a], comm_sizes[b]):
            continue
        records.append(
            IntersectionRecord(
                community_a=int(net.community_labels[a]),
                community_b=int(net.community_labels[b]),
                size_a=int(comm_sizes[a]),
                size_b=int(comm_sizes[b]),
                overlap_size=int(overlap),
                overlap_density=_density(pair_edges.get((a, b), 0), overlap),
                density_a=_density(int(comm_edges[a]), int(comm_sizes[a])),
                density_b=_density(int(comm_edges[b]), int(comm_sizes[b])),
            )
        )
    return records


@dataclass
class IefProfile:
    """Top-k internal edge fractions per node, grouped by membership count."""

    k: int
    groups: dict = field(default_factory=dict)  # membership count -> list of arrays
    skipped_isolated: int = 0


def ief_top_k(net: LabeledNetwork, k: int = 5) -> IefProfile:
    """IEF(v, C) = (neighbors of v inside C) / deg(v), over every community.

    Keeps the k largest values per node in descending order (padded with
    zeros when fewer communities have any of v's neighbors), grouped by the
    number of communities v belongs to. Isolated nodes are skipped and
    counted.
    """
    profile = IefProfile(k=k)
    if net.community_count == 0:
        return profile
    take = min(k, net.community_count)
    src = np.concatenate([net.edges[:, 0], net.edges[:, 1]])
    dst = np.concatenate([net.edges[:, 1], net.edges[:, 0]])
    order = np.argsort(src, kind="stable")
    nbrs = dst[order]
    starts = np.zeros(net.n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=net.n), out=starts[1:])

    for v in range(net.n):
        lo, hi = starts[v], starts[v + 1]
        if lo == hi:
            profile.skipped_isolated += 1
            continue
        counts = Counter()
        for u in nbrs[lo:hi].tolist():
            counts.update(net.node_communities[u].tolist())
        top = sorted(counts.values(), reverse=True)[:take]
        values = np.zeros(take)
        values[: len(top)] = np.array(top) / (hi - lo)
        group = len(net.node_communities[v])
        profile.groups.setdefault(group, []).append(values)
    return profile


@dataclass(frozen=True)
class BoxStats:
    lo: float
    q25: float
    median: float
    q75: float
    hi: float
    count: int


def box_stats(values) -> BoxStats:
    """Min/max whiskers with linearly interpolated quartiles."""
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise ValidationError("cannot summarize an empty sample")
    q25, med, q75 = np.quantile(values, [0.25, 0.5, 0.75], method="linear")
    return BoxStats(
        lo=float(values.min()),
        q25=float(q25),
        median=float(med),
        q75=float(q75),
        hi=float(values.max()),
        count=int(values.size),
    )


def ief_box_rows(profile: IefProfile) -> list:
    """(membership count, rank, BoxStats) rows for the grouped box plot."""
    rows = []
    for group in sorted(profile.groups):
        stacked = np.stack(profile.groups[group])
        for rank in range(stacked.shape[1]):
            rows.append((group, rank + 1, box_stats(stacked[:, rank])))
    return rows


def density_band_rows(records: list, x: float) -> list:
    """(x, series, BoxStats) rows for the overlap-density band plot.

    The x value tags the network the records came from (its measured
    degree-membership correlation); concatenating rows from several runs
    gives the band plot its x axis.
    """
    if not records:
        return []
    overlap = [r.overlap_density for r in records]
    community = [r.density_a for r in records] + [r.density_b for r in records]
    return [
        (x, "overlap", box_stats(overlap)),
        (x, "community", box_stats(community)),
    ]
