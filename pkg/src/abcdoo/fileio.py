"""File formats.

Tab-separated graph files with 1-based node ids:

- edge file: one "u<TAB>v" per line, u < v, sorted lexicographically
- membership file: one "node<TAB>ids" per line for nodes 1..n in order,
  where ids is a comma-separated list of community ids, or "0" for a node
  with no community
- provenance file: one "u<TAB>v<TAB>community" per line matching the edge
  file row for row, community 0 meaning the background graph
- coordinate file: one "element<TAB>x1<TAB>..." per line giving the
  reference-layer position of each element

Measurement CSVs (one file per measurement, comma-separated, header row):

- ccdf: x,ccdf with ccdf = P(X >= x)
- intersection records: community_a,community_b,size_a,size_b,
  overlap_size,overlap_density,density_a,density_b
- density bands: x,series,lo,q25,median,q75,hi,count
- ief boxes: memberships,rank,lo,q25,median,q75,hi,count
- measure summary: single row of network-level scalars
"""

from __future__ import annotations

import csv
import json

import numpy as np

from .errors import ValidationError
from .metrics import LabeledNetwork


def _format_float(x: float) -> str:
    return f"{x:.12g}"


# ---------------------------------------------------------------- writers


def write_edges(path, edges: np.ndarray) -> None:
    with open(path, "w") as fh:
        fh.writelines(f"{u + 1}\t{v + 1}\n" for u, v in edges.tolist())


def write_memberships(path, node_communities, labels=None) -> None:
    with open(path, "w") as fh:
        for node, comms in enumerate(node_communities):
            if len(comms) == 0:
                ids = "0"
            elif labels is None:
                ids = ",".join(str(c + 1) for c in comms.tolist())
            else:
                ids = ",".join(str(int(labels[c])) for c in comms.tolist())
            fh.write(f"{node + 1}\t{ids}\n")


def write_provenance(path, edges: np.ndarray, provenance: np.ndarray) -> None:
    with open(path, "w") as fh:
        fh.writelines(
            f"{u + 1}\t{v + 1}\t{tag}\n"
            for (u, v), tag in zip(edges.tolist(), provenance.tolist())
        )


def write_coordinates(path, coords: np.ndarray) -> None:
    with open(path, "w") as fh:
        for element, row in enumerate(coords):
            cols = "\t".join(_format_float(x) for x in row.tolist())
            fh.write(f"{element + 1}\t{cols}\n")


def write_json(path, payload: dict) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_ccdf_csv(path, ecdf) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "ccdf"])
        for x, p in zip(ecdf.support.tolist(), ecdf.tail.tolist()):
            writer.writerow([x, _format_float(p)])


def write_intersection_csv(path, records) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            [
                "community_a",
                "community_b",
                "size_a",
                "size_b",
                "overlap_size",
                "overlap_density",
                "density_a",
                "density_b",
            ]
        )
        for r in records:
            writer.writerow(
                [
                    r.community_a,
                    r.community_b,
                    r.size_a,
                    r.size_b,
                    r.overlap_size,
                    _format_float(r.overlap_density),
                    _format_float(r.density_a),
                    _format_float(r.density_b),
                ]
            )


def write_density_bands_csv(path, rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "series", "lo", "q25", "median", "q75", "hi", "count"])
        for x, series, stats in rows:
            writer.writerow(
                [
                    _format_float(x),
                    series,
                    _format_float(stats.lo),
                    _format_float(stats.q25),
                    _format_float(stats.median),
                    _format_float(stats.q75),
                    _format_float(stats.hi),
                    stats.count,
                ]
            )


def write_ief_box_csv(path, rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["memberships", "rank", "lo", "q25", "median", "q75", "hi", "count"]
        )
        for group, rank, stats in rows:
            writer.writerow(
                [
                    group,
                    rank,
                    _format_float(stats.lo),
                    _format_float(stats.q25),
                    _format_float(stats.median),
                    _format_float(stats.q75),
                    _format_float(stats.hi),
                    stats.count,
                ]
            )


def write_measure_summary_csv(path, values: dict) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(values))
        writer.writerow(
            [_format_float(v) if isinstance(v, float) else v for v in values.values()]
        )


# ---------------------------------------------------------------- readers


def _parse_int(token: str, path, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ValidationError(f"{path}:{lineno}: {what} is not an integer: {token!r}")


def read_integer_column(path) -> np.ndarray:
    """One integer per line; used for explicit degree and size sequences."""
    values = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            values.append(_parse_int(line, path, lineno, "value"))
    return np.array(values, dtype=np.int64)


def read_edge_file(path) -> np.ndarray:
    """Edges as a 0-based (m, 2) array with u < v, sorted, duplicates rejected."""
    rows = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ValidationError(
                    f"{path}:{lineno}: expected two tab-separated node ids"
                )
            u = _parse_int(parts[0], path, lineno, "node id")
            v = _parse_int(parts[1], path, lineno, "node id")
            if u < 1 or v < 1:
                raise ValidationError(f"{path}:{lineno}: node ids start at 1")
            if u == v:
                raise ValidationError(f"{path}:{lineno}: self-loop {u}")
            rows.append((u - 1, v - 1) if u < v else (v - 1, u - 1))
    if not rows:
        return np.zeros((0, 2), dtype=np.int64)
    edges = np.array(rows, dtype=np.int64)
    order = np.lexsort((edges[:, 1], edges[:, 0]))
    edges = edges[order]
    dup = np.flatnonzero((edges[1:] == edges[:-1]).all(axis=1))
    if dup.size:
        u, v = edges[dup[0]] + 1
        raise ValidationError(f"{path}: duplicate edge {u}\t{v}")
    return edges


def read_membership_file(path) -> list:
    """Per-node community label lists; row k must describe node k (1-based)."""
    memberships = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ValidationError(
                    f"{path}:{lineno}: expected node id and community list"
                )
            node = _parse_int(parts[0], path, lineno, "node id")
            if node != lineno:
                raise ValidationError(
                    f"{path}:{lineno}: rows must list nodes 1..n in order, got {node}"
                )
            labels = [
                _parse_int(tok, path, lineno, "community id")
                for tok in parts[1].split(",")
            ]
            if labels == [0]:
                memberships.append([])
                continue
            if any(c < 1 for c in labels):
                raise ValidationError(
                    f"{path}:{lineno}: community ids must be positive "
                    "(a bare 0 marks a node with no community)"
                )
            if len(set(labels)) != len(labels):
                raise ValidationError(f"{path}:{lineno}: repeated community id")
            memberships.append(sorted(labels))
    return memberships


def read_provenance_file(path, edges: np.ndarray) -> np.ndarray:
    """Per-edge community tags; rows must match the edge set exactly."""
    rows = []
    tags = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ValidationError(
                    f"{path}:{lineno}: expected u, v, and a community tag"
                )
            u = _parse_int(parts[0], path, lineno, "node id")
            v = _parse_int(parts[1], path, lineno, "node id")
            tag = _parse_int(parts[2], path, lineno, "community tag")
            if tag < 0:
                raise ValidationError(f"{path}:{lineno}: tags are 0 or community ids")
            rows.append((u - 1, v - 1) if u < v else (v - 1, u - 1))
            tags.append(tag)
    pairs = np.array(rows, dtype=np.int64).reshape(-1, 2)
    tag_arr = np.array(tags, dtype=np.int64)
    order = np.lexsort((pairs[:, 1], pairs[:, 0]))
    pairs = pairs[order]
    tag_arr = tag_arr[order]
    if pairs.shape != edges.shape or not np.array_equal(pairs, edges):
        raise ValidationError(f"{path}: provenance rows do not match the edge file")
    return tag_arr


def read_labeled_network(edge_path, membership_path, provenance_path=None) -> LabeledNetwork:
    edges = read_edge_file(edge_path)
    label_lists = read_membership_file(membership_path)
    n = len(label_lists)
    if len(edges) and int(edges.max()) >= n:
        bad = int(edges.max()) + 1
        raise ValidationError(
            f"{edge_path}: unknown node id {bad}; "
            f"the membership file defines {n} nodes"
        )
    distinct = sorted({c for labels in label_lists for c in labels})
    index_of = {label: i for i, label in enumerate(distinct)}
    node_communities = [
        np.array([index_of[c] for c in labels], dtype=np.int64)
        for labels in label_lists
    ]
    members = [[] for _ in distinct]
    for node, comms in enumerate(node_communities):
        for c in comms.tolist():
            members[c].append(node)
    provenance = None
    if provenance_path is not None:
        provenance = read_provenance_file(provenance_path, edges)
        known = set(distinct)
        bad = [t for t in np.unique(provenance).tolist() if t != 0 and t not in known]
        if bad:
            raise ValidationError(
                f"{provenance_path}: unknown community tag {bad[0]}"
            )
    return LabeledNetwork(
        n=n,
        edges=edges,
        node_communities=node_communities,
        community_members=[np.array(m, dtype=np.int64) for m in members],
        community_labels=np.array(distinct, dtype=np.int64),
        provenance=provenance,
    )
