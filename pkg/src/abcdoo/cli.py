"""Command-line driver: generate, measure, ckb.

Exit codes: 0 success, 2 rejected parameters or malformed input, 3 the
construction failed for this parameter/seed combination.
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click
import numpy as np

from . import fileio
from .ckb import CkbSpec, generate_ckb
from .errors import GenerationError, ValidationError
from .generator import generate
from .metrics import (
    LabeledNetwork,
    communities_per_node_ccdf,
    community_size_ccdf,
    density_band_rows,
    ief_box_rows,
    ief_top_k,
    intersection_density_profile,
    intersection_size_ccdf,
    realized_rho,
    realized_xi,
)
from .params import Parameters
from .sampling import PowerLawSpec

PARAM_KEYS = ("n", "s0", "eta", "d", "rho", "gamma", "delta", "Delta", "beta", "s", "S", "xi", "seed")
THREADS_ENV = "ABCDOO_THREADS"


def _workers() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        workers = int(raw)
    except ValueError:
        raise click.UsageError(f"{THREADS_ENV} must be an integer, got {raw!r}")
    if workers < 1:
        raise click.UsageError(f"{THREADS_ENV} must be at least 1")
    return workers


def _load_config(path) -> dict:
    if path is None:
        return {}
    try:
        cfg = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise click.UsageError(f"{path}: not valid JSON ({exc})")
    if not isinstance(cfg, dict):
        raise click.UsageError(f"{path}: the config must be a JSON object")
    unknown = sorted(set(cfg) - set(PARAM_KEYS))
    if unknown:
        raise click.UsageError(f"{path}: unknown config keys: {', '.join(unknown)}")
    return cfg


def _build_parameters(config: dict, flags: dict) -> Parameters:
    merged = dict(config)
    merged.update({k: v for k, v in flags.items() if v is not None})
    if "n" not in merged:
        raise click.UsageError("missing required parameter n")
    kwargs = {("dim" if k == "d" else k): v for k, v in merged.items()}
    try:
        return Parameters(**kwargs)
    except ValidationError as exc:
        raise click.UsageError(str(exc))


def _param_options(fn):
    opts = [
        click.option("--n", type=int, default=None, help="number of nodes"),
        click.option("--s0", type=int, default=None, help="number of outliers"),
        click.option("--eta", type=float, default=None, help="mean memberships per non-outlier"),
        click.option("--d", type=int, default=None, help="reference-layer dimension"),
        click.option("--rho", type=float, default=None, help="target degree-membership correlation"),
        click.option("--gamma", type=float, default=None, help="degree exponent"),
        click.option("--delta", type=int, default=None, help="min degree"),
        click.option("--Delta", "Delta", type=int, default=None, help="max degree"),
        click.option("--beta", type=float, default=None, help="community size exponent"),
        click.option("--s", type=int, default=None, help="min community size"),
        click.option("--S", "S", type=int, default=None, help="max community size"),
        click.option("--xi", type=float, default=None, help="noise level"),
        click.option("--seed", type=int, default=None, help="master seed"),
    ]
    for opt in reversed(opts):
        fn = opt(fn)
    return fn


@click.group()
def main():
    """Overlapping-community benchmark graph generator."""


@main.command("generate")
@_param_options
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None, help="JSON file with parameter keys; flags override")
@click.option("--out-dir", type=click.Path(file_okay=False), default=".", show_default=True)
@click.option("--prefix", default="network", show_default=True, help="output file name prefix")
@click.option("--degrees", "degree_path", type=click.Path(exists=True, dir_okay=False), default=None, help="explicit degree sequence, one integer per line")
@click.option("--sizes", "size_path", type=click.Path(exists=True, dir_okay=False), default=None, help="explicit primary community sizes, one integer per line")
@click.option("--coordinates/--no-coordinates", default=False, show_default=True, help="also write reference-layer coordinates")
@click.option("--provenance/--no-provenance", default=False, show_default=True, help="also write per-edge community tags")
@click.option("--timings/--no-timings", default=False, show_default=True, help="also write wall-clock timings")
def generate_cmd(config_path, out_dir, prefix, degree_path, size_path, coordinates, provenance, timings, **flags):
    """Generate a benchmark graph and write its files."""
    params = _build_parameters(_load_config(config_path), flags)
    try:
        explicit_degrees = (
            fileio.read_integer_column(degree_path) if degree_path else None
        )
        explicit_sizes = fileio.read_integer_column(size_path) if size_path else None
    except ValidationError as exc:
        raise click.UsageError(str(exc))

    try:
        net = generate(
            params,
            explicit_degrees=explicit_degrees,
            explicit_sizes=explicit_sizes,
            workers=_workers(),
        )
    except ValidationError as exc:
        raise click.UsageError(str(exc))
    except GenerationError as exc:
        click.echo(f"generation failed: {exc}", err=True)
        sys.exit(3)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    fileio.write_edges(out / f"{prefix}_edges.tsv", net.edges)
    fileio.write_memberships(out / f"{prefix}_memberships.tsv", net.node_communities)
    fileio.write_json(out / f"{prefix}_summary.json", net.summary)
    if coordinates and net.element_coords is not None:
        fileio.write_coordinates(out / f"{prefix}_coordinates.tsv", net.element_coords)
    if provenance:
        fileio.write_provenance(
            out / f"{prefix}_provenance.tsv", net.edges, net.provenance
        )
    if timings:
        fileio.write_json(out / f"{prefix}_timings.json", net.timings)
    for message in net.summary["warnings"]:
        click.echo(f"warning: {message}", err=True)
    click.echo(
        f"wrote {net.summary['edges']} edges, {net.summary['communities']} communities"
        f" to {out / prefix}_*"
    )


@main.command("measure")
@click.option("--edges", "edge_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--memberships", "membership_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--provenance", "provenance_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--out-dir", type=click.Path(file_okay=False), default=".", show_default=True)
@click.option("--prefix", default="measure", show_default=True)
@click.option("--min-overlap", type=int, default=25, show_default=True, help="smallest overlap size kept in the density profile")
@click.option("--ratio-cap", type=float, default=0.5, show_default=True, help="max overlap size as a fraction of the smaller community")
@click.option("--ief-k", type=int, default=5, show_default=True, help="how many internal edge fractions to keep per node")
def measure_cmd(edge_path, membership_path, provenance_path, out_dir, prefix, min_overlap, ratio_cap, ief_k):
    """Measure a labeled network and write one CSV per statistic."""
    try:
        net = fileio.read_labeled_network(edge_path, membership_path, provenance_path)
    except ValidationError as exc:
        raise click.UsageError(str(exc))

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if net.community_count:
        fileio.write_ccdf_csv(
            out / f"{prefix}_community_size_ccdf.csv", community_size_ccdf(net)
        )
    fileio.write_ccdf_csv(
        out / f"{prefix}_communities_per_node_ccdf.csv", communities_per_node_ccdf(net)
    )
    for k in (2, 3, 4):
        fileio.write_ccdf_csv(
            out / f"{prefix}_intersection_size_ccdf_k{k}.csv",
            intersection_size_ccdf(net, k),
        )
    xi_hat = realized_xi(net)
    rho_hat = realized_rho(net)
    records = intersection_density_profile(net, min_overlap, ratio_cap)
    fileio.write_intersection_csv(out / f"{prefix}_intersection_density.csv", records)
    fileio.write_density_bands_csv(
        out / f"{prefix}_intersection_density_bands.csv",
        density_band_rows(records, rho_hat),
    )
    profile = ief_top_k(net, ief_k)
    fileio.write_ief_box_csv(
        out / f"{prefix}_ief_box.csv", ief_box_rows(profile)
    )
    summary = {
        "nodes": net.n,
        "edges": int(len(net.edges)),
        "communities": net.community_count,
        "outlier_nodes": int(sum(1 for c in net.node_communities if len(c) == 0)),
        "realized_xi": xi_hat,
        "realized_rho": rho_hat,
        "qualifying_intersections": len(records),
        "isolated_nodes_skipped": profile.skipped_isolated,
        "background_edge_fraction": (
            float(np.count_nonzero(net.provenance == 0) / max(len(net.edges), 1))
            if net.provenance is not None
            else ""
        ),
    }
    fileio.write_measure_summary_csv(out / f"{prefix}_summary.csv", summary)
    click.echo(f"wrote measurement CSVs to {out / prefix}_*")


@main.command("ckb")
@click.option("--n", type=int, required=True, help="number of nodes")
@click.option("--omega", type=float, required=True, help="membership exponent")
@click.option("--xmin", type=int, required=True, help="min memberships per node")
@click.option("--xmax", type=int, required=True, help="max memberships per node")
@click.option("--beta", type=float, required=True, help="community size exponent")
@click.option("--s", type=int, required=True, help="min community size")
@click.option("--S", "S", type=int, required=True, help="max community size")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out-dir", type=click.Path(file_okay=False), default=".", show_default=True)
@click.option("--prefix", default="ckb", show_default=True)
def ckb_cmd(n, omega, xmin, xmax, beta, s, S, seed, out_dir, prefix):
    """Generate baseline community affiliations (no edges)."""
    try:
        spec = CkbSpec(
            n=n,
            membership_law=PowerLawSpec(omega, xmin, xmax),
            size_law=PowerLawSpec(beta, s, S),
            seed=seed,
        )
    except ValidationError as exc:
        raise click.UsageError(str(exc))
    result = generate_ckb(spec)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    fileio.write_memberships(out / f"{prefix}_memberships.tsv", result.node_memberships)
    fileio.write_json(out / f"{prefix}_stats.json", result.stats)
    click.echo(f"wrote {result.community_count} communities to {out / prefix}_*")


if __name__ == "__main__":
    main()
