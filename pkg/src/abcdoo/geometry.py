"""Reference-layer geometry: points in the unit ball, community seeding and growth.

Communities are laid out over n_hat elements embedded uniformly in the unit
d-ball. Primary communities are carved out by repeatedly taking the active
element of largest norm together with its nearest active neighbors; grown
(secondary) members are the elements nearest each community's primary
centroid that are not already primary members of it.

Neighbor ordering everywhere is by (squared Euclidean distance, element_id),
lowest id breaking distance ties; this is the documented tie-break rule.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .sampling import CommunitySizeSequence

# k-d trees degenerate to linear scans in high dimension; switch backends there.
KDTREE_MAX_DIM = 10


def sample_reference_points(n_hat: int, dim: int, rng: np.random.Generator) -> np.ndarray:
    """n_hat iid points uniform in the unit ball: Gaussian direction, radius U^(1/dim)."""
    x = rng.standard_normal((n_hat, dim))
    norms = np.linalg.norm(x, axis=1)
    norms[norms == 0.0] = 1.0
    radii = rng.random(n_hat) ** (1.0 / dim)
    return x * (radii / norms)[:, None]


def _order_candidates(points: np.ndarray, ids: np.ndarray, center: np.ndarray) -> np.ndarray:
    # one shared ordering path for both backends: (squared distance, element_id)
    diff = points[ids] - center
    d2 = np.einsum("ij,ij->i", diff, diff)
    return ids[np.lexsort((ids, d2))]


class ActiveNeighborIndex:
    """Exact k-nearest-neighbor search with masking; rebuilds once >50% of the
    indexed points are masked."""

    def __init__(self, points: np.ndarray, workers: int = 1):
        self.points = points
        self.n_active = len(points)
        self.active = np.ones(len(points), dtype=bool)
        self.workers = workers
        self.use_tree = points.shape[1] <= KDTREE_MAX_DIM
        self._rebuild()

    def _rebuild(self):
        self.ids = np.flatnonzero(self.active)
        self.local_points = self.points[self.ids]
        self.masked = 0
        if self.use_tree:
            self.tree = cKDTree(self.local_points) if len(self.ids) else None
        else:
            self.sq = np.einsum("ij,ij->i", self.local_points, self.local_points)

    def deactivate(self, ids: np.ndarray):
        self.active[ids] = False
        self.n_active -= len(ids)
        self.masked += len(ids)
        if 2 * self.masked > len(self.ids):
            self._rebuild()

    def nearest_active(self, center: np.ndarray, k: int) -> np.ndarray:
        """The k active elements nearest to center, ordered by (distance, id)."""
        k = min(k, self.n_active)
        if k == 0:
            return np.zeros(0, dtype=np.int64)
        if self.use_tree:
            cand = self._tree_candidates(center, k)
        else:
            cand = self._brute_candidates(center, k)
        return _order_candidates(self.points, cand, center)[:k]

    def _tree_candidates(self, center, k):
        total = len(self.ids)
        kk = min(k + self.masked, total)
        while True:
            _, loc = self.tree.query(center, k=kk, workers=self.workers)
            loc = np.atleast_1d(loc)
            glob = self.ids[loc]
            glob = glob[self.active[glob]]
            if len(glob) >= k or kk == total:
                return glob
            kk = min(2 * kk, total)

    def _brute_candidates(self, center, k):
        mask = self.active[self.ids]
        pts = self.local_points[mask]
        glob = self.ids[mask]
        d2 = self.sq[mask] - 2.0 * (pts @ center)  # + |center|^2, constant for ranking
        if k < len(glob):
            # margin of extra candidates; the boundary is refined by the shared
            # exact ordering afterwards
            extra = min(len(glob), k + 8)
            keep = np.argpartition(d2, extra - 1)[:extra]
            return glob[keep]
        return glob


class StaticNeighborIndex:
    """Exact k-nearest-neighbor search over an immutable point set."""

    def __init__(self, points: np.ndarray, workers: int = 1):
        self.points = points
        self.workers = workers
        self.use_tree = points.shape[1] <= KDTREE_MAX_DIM
        if self.use_tree:
            self.tree = cKDTree(points)
        else:
            self.sq = np.einsum("ij,ij->i", points, points)

    def nearest(self, center: np.ndarray, k: int) -> np.ndarray:
        k = min(k, len(self.points))
        if k == 0:
            return np.zeros(0, dtype=np.int64)
        if self.use_tree:
            _, loc = self.tree.query(center, k=k, workers=self.workers)
            cand = np.atleast_1d(loc)
        else:
            d2 = self.sq - 2.0 * (self.points @ center)
            if k < len(d2):
                extra = min(len(d2), k + 8)
                cand = np.argpartition(d2, extra - 1)[:extra]
            else:
                cand = np.arange(len(d2))
        return _order_candidates(self.points, cand, center)[:k]


@dataclass
class CommunityLayout:
    """Full geometric layout: who belongs where, and how often."""

    points: np.ndarray
    primary_sizes: np.ndarray
    primary_of: np.ndarray  # element -> community index (0-based)
    members: list  # community -> element ids, primaries first then secondaries
    membership_count: np.ndarray  # eta_v per element
    memberships: list  # element -> ascending community indices
    centroids: np.ndarray

    @property
    def count(self) -> int:
        return len(self.members)

    @property
    def member_sizes(self) -> np.ndarray:
        return np.array([len(m) for m in self.members], dtype=np.int64)


def assign_primary_communities(points: np.ndarray, primary_sizes, workers: int = 1):
    """Furthest-point seeding: community j is the max-norm active element plus its
    size-1 nearest active neighbors, all deactivated afterwards. Partitions [n_hat]."""
    n = len(points)
    norms = np.sqrt(np.einsum("ij,ij->i", points, points))
    seed_order = np.lexsort((np.arange(n), -norms))
    index = ActiveNeighborIndex(points, workers=workers)
    primary_of = np.full(n, -1, dtype=np.int64)
    members = []
    ptr = 0
    for j, size in enumerate(primary_sizes):
        while primary_of[seed_order[ptr]] >= 0:
            ptr += 1
        seed = seed_order[ptr]
        chosen = index.nearest_active(points[seed], int(size))
        primary_of[chosen] = j
        members.append(chosen)
        index.deactivate(chosen)
    return primary_of, members


def grow_communities(points: np.ndarray, primary_members: list, grown_sizes, workers: int = 1):
    """Extend each community independently with the elements nearest its primary
    centroid that are not among its own primaries, until it has grown_sizes[j] members."""
    n = len(points)
    index = StaticNeighborIndex(points, workers=workers)
    is_primary = np.zeros(n, dtype=bool)
    members = []
    centroids = np.zeros((len(primary_members), points.shape[1]))
    for j, prim in enumerate(primary_members):
        target = min(int(grown_sizes[j]), n)
        centroid = points[prim].mean(axis=0)
        centroids[j] = centroid
        need = target - len(prim)
        if need <= 0:
            members.append(prim.copy())
            continue
        cand = index.nearest(centroid, target)
        is_primary[prim] = True
        extras = cand[~is_primary[cand]][:need]
        is_primary[prim] = False
        members.append(np.concatenate([prim, extras]))
    return members, centroids


def element_memberships(members: list, n: int):
    """Per-element membership count and ascending community-index lists."""
    count = np.zeros(n, dtype=np.int64)
    if members:
        flat = np.concatenate(members)
        comm = np.repeat(np.arange(len(members)), [len(m) for m in members])
        order = np.argsort(flat, kind="stable")
        flat, comm = flat[order], comm[order]
        np.add.at(count, flat, 1)
        split_at = np.cumsum(count)[:-1]
        lists = [arr for arr in np.split(comm, split_at)]
    else:
        lists = [np.zeros(0, dtype=np.int64) for _ in range(n)]
    return count, lists


def build_layout(points: np.ndarray, sizes: CommunitySizeSequence, workers: int = 1) -> CommunityLayout:
    primary_of, primaries = assign_primary_communities(points, sizes.primary_sizes, workers)
    members, centroids = grow_communities(points, primaries, sizes.grown_sizes, workers)
    count, lists = element_memberships(members, len(points))
    return CommunityLayout(
        points=points,
        primary_sizes=sizes.primary_sizes,
        primary_of=primary_of,
        members=members,
        membership_count=count,
        memberships=lists,
        centroids=centroids,
    )
