"""The end-to-end generation pipeline.

Order of phases: degree sequence, outlier selection, community sizes and
geometric layout, degree-to-element pairing (correlation tuning), degree
splitting and per-community configuration models, local and global rewiring.
All randomness flows from one master seed through named substreams, so a
(parameters, seed) pair fully determines the output regardless of worker
thread count.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .assignment import (
    OutlierSelection,
    PairingState,
    compute_phi,
    select_outliers,
    tune_alpha,
)
from .edges import (
    DegreeSplit,
    allocate_community_halfedges,
    assemble_union,
    check_quota_capacity,
    configuration_model,
    fix_parity,
    split_degrees,
)
from .errors import GenerationError
from .geometry import build_layout, sample_reference_points
from .params import Parameters
from .rewiring import global_rewire, rewire_component
from .sampling import build_community_size_sequences, build_degree_sequence


@dataclass
class GeneratedNetwork:
    params: Parameters
    degrees: np.ndarray  # per node, non-increasing (node ids are degree ranks)
    outliers: np.ndarray  # sorted node ids, 0-based
    node_communities: list  # node -> ascending community indices (0-based); empty for outliers
    community_members: list  # community -> node ids, primaries first
    edges: np.ndarray  # (m, 2), 0-based, u < v, lexicographically sorted
    provenance: np.ndarray  # (m,) community id (1-based), 0 = background
    element_coords: np.ndarray | None
    node_of_element: np.ndarray | None  # element id -> node id
    summary: dict
    timings: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.params.n

    def membership_sets(self) -> list:
        return [set(c.tolist()) for c in self.node_communities]


def generate(
    params: Parameters,
    explicit_degrees=None,
    explicit_sizes=None,
    workers: int = 1,
) -> GeneratedNetwork:
    timings = {}
    t_start = time.perf_counter()
    root = np.random.SeedSequence(params.seed)
    (
        ss_deg,
        ss_out,
        ss_sizes,
        ss_points,
        ss_pair,
        ss_split,
        ss_alloc,
        ss_graphs,
        ss_rewire,
        ss_global,
    ) = root.spawn(10)
    warnings = []

    t0 = time.perf_counter()
    degrees = build_degree_sequence(params, np.random.default_rng(ss_deg), explicit_degrees)
    timings["degree_sequence"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    outsel = select_outliers(degrees, params, np.random.default_rng(ss_out))
    outlier_mask = np.zeros(params.n, dtype=bool)
    outlier_mask[outsel.outliers] = True
    timings["outlier_selection"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    sizes = build_community_size_sequences(params, np.random.default_rng(ss_sizes), explicit_sizes)
    if sizes.over_cap_count:
        warnings.append(
            f"{sizes.over_cap_count} primary community sizes exceed floor(S/eta) "
            "after the overshoot adjustment"
        )
    if sizes.capped_at_n_hat:
        warnings.append(
            f"{sizes.capped_at_n_hat} grown community sizes were capped at n - s0"
        )
    timings["community_sizes"] = time.perf_counter() - t0

    n_hat = params.n_hat
    nonoutlier_nodes = np.flatnonzero(~outlier_mask)
    if n_hat > 0:
        t0 = time.perf_counter()
        points = sample_reference_points(n_hat, params.dim, np.random.default_rng(ss_points))
        layout = build_layout(points, sizes, workers=workers)
        timings["layout"] = time.perf_counter() - t0

        t0 = time.perf_counter()
        phi = compute_phi(sizes.primary_sizes, n_hat, params.s0, params.xi)
        d_hat = degrees[nonoutlier_nodes]
        state, tune_warnings = tune_alpha(
            d_hat, layout, phi, params.xi, params.rho, ss_pair, params.rho_tolerance
        )
        warnings.extend(tune_warnings)
        timings["pairing"] = time.perf_counter() - t0

        node_of_element = np.empty(n_hat, dtype=np.int64)
        node_of_element[state.pairing] = nonoutlier_nodes
        node_communities = [np.zeros(0, dtype=np.int64)] * params.n
        for i, node in enumerate(nonoutlier_nodes):
            node_communities[node] = layout.memberships[state.pairing[i]]
        community_members = [node_of_element[mem] for mem in layout.members]
        element_coords = layout.points
    else:
        phi = compute_phi(sizes.primary_sizes, max(n_hat, 1), params.s0, params.xi)
        state = PairingState(0.0, phi, np.zeros(0, dtype=np.int64), 0.0, 0)
        node_of_element = None
        element_coords = None
        node_communities = [np.zeros(0, dtype=np.int64) for _ in range(params.n)]
        community_members = []
        timings["layout"] = 0.0
        timings["pairing"] = 0.0

    t0 = time.perf_counter()
    split = split_degrees(degrees, outlier_mask, params.xi, np.random.default_rng(ss_split))
    allocate_community_halfedges(
        split, node_communities, community_members, np.random.default_rng(ss_alloc)
    )
    fix_parity(split, community_members)
    check_quota_capacity(split, community_members)
    timings["degree_split"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    n_comm = len(community_members)
    graph_streams = ss_graphs.spawn(n_comm + 1)
    background = configuration_model(
        np.arange(params.n, dtype=np.int64),
        split.background_degree,
        np.random.default_rng(graph_streams[0]),
    )
    component_graphs = [background]
    for j, mem in enumerate(community_members):
        component_graphs.append(
            configuration_model(mem, split.quotas[j], np.random.default_rng(graph_streams[j + 1]))
        )
    timings["configuration_models"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    rewire_streams = ss_rewire.spawn(n_comm + 1)
    parts = []
    leftovers = []
    local_stats = {"initial_offenders": 0, "rounds": 0, "leftovers": 0}
    for tag, graph in enumerate(component_graphs):
        edge_list = [(int(u), int(v)) for u, v in graph]
        kept, left, st = rewire_component(edge_list, np.random.default_rng(rewire_streams[tag]))
        parts.append((kept, tag))
        leftovers.extend((e, tag) for e in left)
        local_stats["initial_offenders"] += st.initial_offenders
        local_stats["rounds"] += st.rounds
        local_stats["leftovers"] += st.leftovers
    final_edges, final_tags, gstats = global_rewire(
        parts, leftovers, np.random.default_rng(ss_global)
    )
    timings["rewiring"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    if final_edges:
        edges = np.array(final_edges, dtype=np.int64)
        prov = np.array(final_tags, dtype=np.int64)
        order = np.lexsort((edges[:, 1], edges[:, 0]))
        edges = edges[order]
        prov = prov[order]
    else:
        edges = np.zeros((0, 2), dtype=np.int64)
        prov = np.zeros(0, dtype=np.int64)

    out_degrees = np.bincount(edges.ravel(), minlength=params.n)
    if not np.array_equal(out_degrees, degrees):
        raise GenerationError("internal error: output degrees do not match the input sequence")

    mem_sets = [set(c.tolist()) for c in node_communities]
    if len(edges):
        shared = sum(
            0 if mem_sets[u].isdisjoint(mem_sets[v]) else 1 for u, v in edges.tolist()
        )
        realized_xi = 1.0 - shared / len(edges)
        background_fraction = float(np.count_nonzero(prov == 0) / len(edges))
    else:
        realized_xi = 0.0
        background_fraction = 0.0
    timings["assembly"] = time.perf_counter() - t0
    timings["total"] = time.perf_counter() - t_start

    summary = {
        "parameters": params.as_dict(),
        "nodes": params.n,
        "edges": int(len(edges)),
        "communities": n_comm,
        "outliers": int(params.s0),
        "phi": phi,
        "alpha": state.alpha,
        "achieved_rho": state.achieved_rho,
        "fallback_pairings": int(state.fallback_count),
        "realized_xi": realized_xi,
        "background_edge_fraction": background_fraction,
        "outlier_ell": outsel.ell,
        "outlier_bound": outsel.bound,
        "parity_fixes": int(split.parity_fixes),
        "primary_sizes_over_cap": int(sizes.over_cap_count),
        "grown_sizes_capped": int(sizes.capped_at_n_hat),
        "recycle": {
            "local_initial_offenders": local_stats["initial_offenders"],
            "local_rounds": local_stats["rounds"],
            "local_leftovers": local_stats["leftovers"],
            "global_cross_duplicates": gstats.cross_duplicates,
            "global_list_size": gstats.list_size,
            "global_accepts": gstats.accepts,
            "global_failed_attempts": gstats.failed_attempts,
        },
        "warnings": warnings,
    }
    return GeneratedNetwork(
        params=params,
        degrees=degrees,
        outliers=outsel.outliers,
        node_communities=node_communities,
        community_members=community_members,
        edges=edges,
        provenance=prov,
        element_coords=element_coords,
        node_of_element=node_of_element,
        summary=summary,
        timings=timings,
    )
