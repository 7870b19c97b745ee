"""Random graph benchmark with overlapping communities and outliers."""

from .ckb import CkbAffiliation, CkbSpec, ckb_community_count, generate_ckb
from .errors import GenerationError, ValidationError
from .generator import GeneratedNetwork, generate
from .metrics import (
    Ecdf,
    LabeledNetwork,
    communities_per_node_ccdf,
    community_size_ccdf,
    ief_top_k,
    intersection_density_profile,
    intersection_size_ccdf,
    realized_rho,
    realized_xi,
)
from .params import Parameters
from .sampling import PowerLawSpec, random_round, sample_tpl

__version__ = "0.1.0"

__all__ = [
    "CkbAffiliation",
    "CkbSpec",
    "Ecdf",
    "GeneratedNetwork",
    "GenerationError",
    "LabeledNetwork",
    "Parameters",
    "PowerLawSpec",
    "ValidationError",
    "ckb_community_count",
    "communities_per_node_ccdf",
    "community_size_ccdf",
    "generate",
    "generate_ckb",
    "ief_top_k",
    "intersection_density_profile",
    "intersection_size_ccdf",
    "random_round",
    "realized_rho",
    "realized_xi",
    "sample_tpl",
]
