"""Outlier selection and degree-to-element pairing with correlation tuning.

Non-outlier degrees (non-increasing) are matched one by one to reference-layer
elements. At degree d the admissible elements are the unassigned v with

    d <= eta_v / (1 - xi * phi) * min(|C_k| - 1 over v's communities),

and among them one is drawn with probability proportional to eta_v^alpha.
alpha is tuned by bisection so the realized Pearson correlation between
degree and membership count hits the requested target.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GenerationError
from .geometry import CommunityLayout
from .params import Parameters

ALPHA_RANGE = 60.0
MAX_ALPHA_EVALS = 30
STALL_LIMIT = 5  # consecutive non-improving bisection steps before giving up


@dataclass
class OutlierSelection:
    outliers: np.ndarray  # sorted node indices
    ell: float
    bound: float


def select_outliers(degrees: np.ndarray, params: Parameters, rng: np.random.Generator) -> OutlierSelection:
    """Choose s0 outliers uniformly among the low-degree-eligible nodes."""
    n = params.n
    ell = float(np.minimum(1.0, params.xi * degrees).sum())
    bound = ell + params.s0 - ell * params.s0 / n - 1.0
    if params.s0 == 0:
        return OutlierSelection(np.zeros(0, dtype=np.int64), ell, bound)
    eligible = np.flatnonzero(degrees <= bound)
    if len(eligible) < params.s0:
        raise GenerationError(
            f"only {len(eligible)} nodes are eligible to be outliers "
            f"(degree <= {bound:.3f}) but s0={params.s0}; "
            "increase xi or decrease s0"
        )
    chosen = rng.choice(eligible, size=params.s0, replace=False)
    return OutlierSelection(np.sort(chosen), ell, bound)


def compute_phi(primary_sizes: np.ndarray, n_hat: int, s0: int, xi: float) -> float:
    """Capacity-slack correction; 1 when the correction's motivation vanishes."""
    denom = n_hat * xi + s0
    if denom == 0:
        return 1.0
    frac = np.asarray(primary_sizes, dtype=float) / n_hat
    return float(1.0 - np.sum(frac * frac) * (n_hat * xi) / denom)


def pearson_correlation(xs, ys) -> float:
    """Sample Pearson coefficient; 0 for constant inputs (no achievable correlation)."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape:
        raise ValueError(f"length mismatch: {x.shape} vs {y.shape}")
    if x.size < 2:
        return 0.0
    xc = x - x.mean()
    yc = y - y.mean()
    sx = float(np.sqrt(np.sum(xc * xc)))
    sy = float(np.sqrt(np.sum(yc * yc)))
    if sx == 0.0 or sy == 0.0:
        return 0.0
    return float(np.dot(xc, yc) / (sx * sy))


@dataclass
class PairingState:
    alpha: float
    phi: float
    pairing: np.ndarray  # degree index -> element id
    achieved_rho: float
    fallback_count: int


def element_capacities(layout: CommunityLayout, phi: float, xi: float) -> np.ndarray:
    """Capacity eta_v / (1 - xi*phi) * (smallest membership community size - 1)."""
    sizes = layout.member_sizes
    min_size = np.full(len(layout.points), np.iinfo(np.int64).max, dtype=np.int64)
    for j, mem in enumerate(layout.members):
        np.minimum.at(min_size, mem, sizes[j])
    return layout.membership_count / (1.0 - xi * phi) * (min_size - 1)


class _PairingProblem:
    """Shared precomputation for repeated pairings of one (degrees, layout) pair."""

    def __init__(self, degrees: np.ndarray, eta: np.ndarray, caps: np.ndarray):
        self.degrees = degrees
        self.eta = eta
        self.caps = caps
        self.order = np.argsort(-caps, kind="stable")  # admission order, large caps first
        self.caps_sorted = caps[self.order]
        self.eta_values, self.eta_idx = np.unique(eta, return_inverse=True)
        self.log_eta = np.log(self.eta_values.astype(float))

    def pair(self, alpha: float, rng: np.random.Generator):
        n = len(self.degrees)
        nh = len(self.eta_values)
        a_log = alpha * self.log_eta  # ascending in h for alpha > 0, descending for alpha < 0
        # weight rows normalized by the most extreme present bucket so nothing
        # overflows at |alpha| = 60; clipped entries belong to empty buckets only
        rows = {}

        def weight_row(r: int) -> np.ndarray:
            row = rows.get(r)
            if row is None:
                row = np.exp(np.minimum(a_log - a_log[r], 0.0))
                rows[r] = row
            return row

        counts = np.zeros(nh)
        buckets = [[] for _ in range(nh)]
        cur = -1  # index of the normalizing bucket; -1 when the pool is empty
        assigned = np.zeros(len(self.caps), dtype=bool)
        pairing = np.empty(n, dtype=np.int64)
        fallbacks = 0
        ptr = 0
        u = rng.random(2 * n)
        order, caps_sorted, eta_idx = self.order, self.caps_sorted, self.eta_idx
        for i in range(n):
            d = self.degrees[i]
            while ptr < len(order) and caps_sorted[ptr] >= d:
                v = order[ptr]
                ptr += 1
                if assigned[v]:
                    continue
                h = int(eta_idx[v])
                buckets[h].append(v)
                counts[h] += 1.0
                if cur < 0 or (h > cur if alpha >= 0 else h < cur):
                    cur = h
            if cur >= 0:
                cw = np.cumsum(counts * weight_row(cur))
                r = u[2 * i] * cw[-1]
                h = int(np.searchsorted(cw, r, side="right"))
                if h >= nh:
                    h = nh - 1
                while not buckets[h]:  # float-boundary guard; lands on a filled bucket
                    h -= 1
                lst = buckets[h]
                pos = int(u[2 * i + 1] * len(lst))
                v = lst[pos]
                lst[pos] = lst[-1]
                lst.pop()
                counts[h] -= 1.0
                if not lst and h == cur:
                    present = np.flatnonzero(counts)
                    if len(present):
                        cur = int(present[-1] if alpha >= 0 else present[0])
                    else:
                        cur = -1
            else:
                # nothing admissible: uniform among the unassigned elements of maximal capacity
                p = ptr
                while assigned[order[p]]:
                    p += 1
                cap_top = caps_sorted[p]
                run = []
                q = p
                while q < len(order) and caps_sorted[q] == cap_top:
                    if not assigned[order[q]]:
                        run.append(order[q])
                    q += 1
                v = run[int(u[2 * i] * len(run))]
                fallbacks += 1
            assigned[v] = True
            pairing[i] = v
        return pairing, fallbacks


def pair_degrees_with_alpha(
    nonoutlier_degrees: np.ndarray,
    layout: CommunityLayout,
    phi: float,
    xi: float,
    alpha: float,
    rng: np.random.Generator,
) -> PairingState:
    caps = element_capacities(layout, phi, xi)
    problem = _PairingProblem(np.asarray(nonoutlier_degrees), layout.membership_count, caps)
    pairing, fallbacks = problem.pair(alpha, rng)
    rho = pearson_correlation(problem.degrees, layout.membership_count[pairing])
    return PairingState(alpha, phi, pairing, rho, fallbacks)


def tune_alpha(
    nonoutlier_degrees: np.ndarray,
    layout: CommunityLayout,
    phi: float,
    xi: float,
    rho_target: float,
    seed_seq: np.random.SeedSequence,
    tolerance: float = 0.005,
) -> tuple[PairingState, list]:
    """Bisection on alpha in [-60, 60] toward the target correlation.

    Returns the best pairing observed plus any warnings. Each evaluation runs
    on its own RNG substream so the search is reproducible and its evaluations
    independent.
    """
    degrees = np.asarray(nonoutlier_degrees)
    eta = layout.membership_count
    caps = element_capacities(layout, phi, xi)
    problem = _PairingProblem(degrees, eta, caps)
    streams = seed_seq.spawn(MAX_ALPHA_EVALS)
    warnings = []

    def evaluate(alpha: float, k: int) -> PairingState:
        rng = np.random.default_rng(streams[k])
        pairing, fallbacks = problem.pair(alpha, rng)
        rho = pearson_correlation(degrees, eta[pairing])
        return PairingState(alpha, phi, pairing, rho, fallbacks)

    if len(degrees) < 2 or np.all(eta == eta[0]):
        state = evaluate(0.0, 0)
        warnings.append(
            "membership counts are constant; degree-membership correlation is fixed at 0"
        )
        return state, warnings

    best = evaluate(-ALPHA_RANGE, 0)
    lo, lo_rho = -ALPHA_RANGE, best.achieved_rho
    cand = evaluate(ALPHA_RANGE, 1)
    hi, hi_rho = ALPHA_RANGE, cand.achieved_rho
    if abs(cand.achieved_rho - rho_target) < abs(best.achieved_rho - rho_target):
        best = cand
    evals = 2
    stall = 0
    last_rho = None
    while (
        evals < MAX_ALPHA_EVALS
        and abs(best.achieved_rho - rho_target) > tolerance
        and hi - lo >= 0.01
        and stall < STALL_LIMIT
    ):
        mid = 0.5 * (lo + hi)
        cand = evaluate(mid, evals)
        evals += 1
        improved = abs(cand.achieved_rho - rho_target) < abs(best.achieved_rho - rho_target)
        if improved:
            best = cand
        # A stalled search is one whose correlation has flattened out without
        # getting any closer to the target (an unreachable target); ordinary
        # bisection steps far from convergence swing the correlation widely
        # and must not count.
        plateaued = last_rho is not None and abs(cand.achieved_rho - last_rho) <= tolerance
        stall = stall + 1 if (plateaued and not improved) else 0
        last_rho = cand.achieved_rho
        if cand.achieved_rho < rho_target:
            lo = mid
        else:
            hi = mid
    if abs(best.achieved_rho - rho_target) > tolerance:
        warnings.append(
            f"target correlation {rho_target:.3f} not reached; closest possible "
            f"was {best.achieved_rho:.3f} at alpha={best.alpha:.2f}"
        )
    return best, warnings
