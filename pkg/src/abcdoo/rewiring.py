"""Self-loop and multi-edge repair.

Each component multigraph (every community graph plus the background graph)
is first rewired locally: offending edges (all self-loops, all but one copy
of each duplicated pair) go onto a recycle list, each listed edge is crossed
with a uniformly chosen partner edge, and a rewire is kept only when it
creates no new offender. Rounds repeat while the list keeps shrinking;
whatever remains is handed to a global phase that works against the merged
edge set of all components, where it also resolves duplicates BETWEEN
components. The global phase aborts after 100 x (initial global list size)
consecutive failed attempts.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import GenerationError


def _canon(u: int, v: int) -> tuple:
    return (u, v) if u <= v else (v, u)


def collect_offenders(edges: list, counts: Counter) -> list:
    """Indices of offending edge slots: every loop, all but the first copy of a pair."""
    seen = set()
    out = []
    for i, e in enumerate(edges):
        if e[0] == e[1]:
            out.append(i)
        elif counts[e] >= 2:
            if e in seen:
                out.append(i)
            else:
                seen.add(e)
    return out


@dataclass
class RewireStats:
    initial_offenders: int = 0
    rounds: int = 0
    leftovers: int = 0


def rewire_component(edges: list, rng: np.random.Generator):
    """Local rewiring of one component.

    edges: list of (u, v) tuples, loops/duplicates allowed. Returns
    (kept simple edges, leftover offending edges, stats).
    """
    edges = [_canon(*e) for e in edges]
    counts = Counter(edges)
    offenders = collect_offenders(edges, counts)
    stats = RewireStats(initial_offenders=len(offenders))
    m = len(edges)
    while offenders and m >= 2:
        shuffled = np.array(offenders, dtype=np.int64)
        rng.shuffle(shuffled)
        for idx in shuffled:
            e = edges[idx]
            if e[0] != e[1] and counts[e] < 2:
                continue  # fixed earlier this round while acting as a partner
            j = int(rng.integers(m - 1))
            if j >= idx:
                j += 1
            f = edges[j]
            a, b = e
            c, d = f
            if rng.random() < 0.5:
                new1, new2 = _canon(a, c), _canon(b, d)
            else:
                new1, new2 = _canon(a, d), _canon(b, c)
            if new1[0] == new1[1] or new2[0] == new2[1] or new1 == new2:
                continue
            counts[e] -= 1
            counts[f] -= 1
            if counts[new1] == 0 and counts[new2] == 0:
                edges[idx] = new1
                edges[j] = new2
                counts[new1] += 1
                counts[new2] += 1
            else:
                counts[e] += 1
                counts[f] += 1
        fresh = collect_offenders(edges, counts)
        stats.rounds += 1
        if len(fresh) >= len(offenders):
            offenders = fresh
            break
        offenders = fresh
    lefties = set(offenders)
    kept = [e for i, e in enumerate(edges) if i not in lefties]
    leftovers = [edges[i] for i in offenders]
    stats.leftovers = len(leftovers)
    return kept, leftovers, stats


@dataclass
class GlobalRewireStats:
    cross_duplicates: int = 0
    list_size: int = 0
    accepts: int = 0
    failed_attempts: int = 0
    repair_rounds: int = 0


def global_rewire(components: list, leftovers: list, rng: np.random.Generator):
    """Merge simple components, recycle cross-component duplicates and leftovers.

    components: list of (edge list, tag) merged in the given order; the first
    encountered copy of a duplicated pair keeps its place. leftovers: list of
    (edge, tag). Returns (edges, tags, stats) of the final simple graph.
    """
    merged = []  # parallel lists of edge, tag
    merged_tags = []
    counts = Counter()
    recycle = []  # (edge, tag) pairs awaiting repair
    for part, tag in components:
        for e in part:
            e = _canon(*e)
            if counts[e]:
                recycle.append((e, tag))
            else:
                counts[e] += 1
                merged.append(e)
                merged_tags.append(tag)
    stats = GlobalRewireStats(cross_duplicates=len(recycle))
    recycle.extend((_canon(*e), tag) for e, tag in leftovers)
    stats.list_size = len(recycle)
    if not recycle:
        return merged, merged_tags, stats

    # dissolve the recycle list into half-edges and pair them up again
    halves = []
    for (uu, vv), tag in recycle:
        halves.append((uu, tag))
        halves.append((vv, tag))
    perm = rng.permutation(len(halves))
    pending = []
    for k in range(0, len(halves), 2):
        (x, t1), (y, _) = halves[perm[k]], halves[perm[k + 1]]
        e = _canon(x, y)
        if e[0] == e[1] or counts[e]:
            pending.append((e, t1))
        else:
            counts[e] += 1
            merged.append(e)
            merged_tags.append(t1)

    budget = 100 * stats.list_size
    failed = 0
    while pending:
        order = rng.permutation(len(pending))
        next_pending = []
        for k in order:
            e, tag = pending[k]
            if failed >= budget:
                raise GenerationError(
                    "global rewiring could not repair the graph within "
                    f"{budget} attempts; the degree sequence likely cannot be "
                    "realized as a simple graph and should be reconsidered"
                )
            if not merged:
                failed += 1
                next_pending.append((e, tag))
                continue
            j = int(rng.integers(len(merged)))
            f = merged[j]
            a, b = e
            c, d = f
            if rng.random() < 0.5:
                new1, new2 = _canon(a, c), _canon(b, d)
            else:
                new1, new2 = _canon(a, d), _canon(b, c)
            ok = (
                new1[0] != new1[1]
                and new2[0] != new2[1]
                and new1 != new2
                and counts[new1] == (1 if new1 == f else 0)
                and counts[new2] == (1 if new2 == f else 0)
            )
            if not ok:
                failed += 1
                next_pending.append((e, tag))
                continue
            f_tag = merged_tags[j]
            counts[f] -= 1
            counts[new1] += 1
            counts[new2] += 1
            # new1 carries e's first endpoint and keeps e's tag; new2 keeps f's
            merged[j] = new1
            merged_tags[j] = tag
            merged.append(new2)
            merged_tags.append(f_tag)
            stats.accepts += 1
            failed = 0
        pending = next_pending
        stats.repair_rounds += 1
    return merged, merged_tags, stats
