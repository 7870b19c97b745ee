"""Model parameters and validation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields

from .errors import ValidationError


@dataclass
class Parameters:
    """The twelve model knobs plus the RNG seed.

    n: node count
    s0: outlier count
    eta: mean number of memberships per non-outlier, real >= 1
    dim: reference-layer dimension
    rho: target Pearson correlation between degree and membership count
    gamma: degree exponent
    delta: min degree
    Delta: max degree
    beta: community-size exponent
    s: min community size
    S: max community size
    xi: noise level in [0, 1]
    """

    n: int
    s0: int = 0
    eta: float = 1.0
    dim: int = 2
    rho: float = 0.0
    gamma: float = 2.5
    delta: int = 5
    Delta: int = 50
    beta: float = 1.5
    s: int = 10
    S: int = 100
    xi: float = 0.2
    seed: int = 0
    rho_tolerance: float = field(default=0.005, repr=False)

    def __post_init__(self):
        self.validate()

    def validate(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValidationError("n must be a positive integer")
        if int(self.s0) != self.s0 or not 0 <= self.s0 <= self.n:
            raise ValidationError(f"s0 must be an integer in [0, n]; got {self.s0}")
        if self.eta < 1:
            raise ValidationError(f"eta must be >= 1; got {self.eta}")
        if int(self.dim) != self.dim or self.dim < 1:
            raise ValidationError(f"dim must be an integer >= 1; got {self.dim}")
        if not -1 <= self.rho <= 1:
            raise ValidationError(f"rho must lie in [-1, 1]; got {self.rho}")
        if self.gamma <= 0:
            raise ValidationError(f"gamma must be positive; got {self.gamma}")
        if int(self.delta) != self.delta or self.delta < 1:
            raise ValidationError(f"delta must be an integer >= 1; got {self.delta}")
        if int(self.Delta) != self.Delta or self.Delta < self.delta:
            raise ValidationError(
                f"Delta must be an integer >= delta={self.delta}; got {self.Delta}"
            )
        if self.beta <= 0:
            raise ValidationError(f"beta must be positive; got {self.beta}")
        if int(self.s) != self.s or self.s < self.delta + 1:
            raise ValidationError(
                f"s must be an integer >= delta+1 = {self.delta + 1} "
                f"(community size range starts above the min degree); got {self.s}"
            )
        if int(self.S) != self.S or self.S < self.s:
            raise ValidationError(f"S must be an integer >= s={self.s}; got {self.S}")
        if not 0 <= self.xi <= 1:
            raise ValidationError(f"xi must lie in [0, 1]; got {self.xi}")
        if self.primary_size_min > self.primary_size_max:
            raise ValidationError(
                f"empty primary-size range: ceil(s/eta)={self.primary_size_min} "
                f"> floor(S/eta)={self.primary_size_max}"
            )
        n_hat = self.n - self.s0
        if 0 < n_hat < self.primary_size_min:
            raise ValidationError(
                f"n - s0 = {n_hat} is smaller than the minimum primary community "
                f"size ceil(s/eta) = {self.primary_size_min}"
            )
        if int(self.seed) != self.seed:
            raise ValidationError(f"seed must be an integer; got {self.seed}")
        for name in ("n", "s0", "dim", "delta", "Delta", "s", "S", "seed"):
            setattr(self, name, int(getattr(self, name)))

    @property
    def n_hat(self) -> int:
        return self.n - self.s0

    @property
    def primary_size_min(self) -> int:
        return math.ceil(self.s / self.eta)

    @property
    def primary_size_max(self) -> int:
        return math.floor(self.S / self.eta)

    def as_dict(self) -> dict:
        out = {}
        for f in fields(self):
            if f.name == "rho_tolerance":
                continue
            out[f.name] = getattr(self, f.name)
        return out
