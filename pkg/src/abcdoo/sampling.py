"""Truncated power-law sampling and the integer sequences built on it.

Covers the degree sequence (with the even-sum parity fix) and the
community-size sequences: primary sizes drawn until they exhaust the
non-outlier count, the overshoot adjustment, and the grown sizes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GenerationError, ValidationError
from .params import Parameters


@dataclass(frozen=True)
class PowerLawSpec:
    """Discrete truncated power law on {lo..hi} with P(k) ~ integral of x^-exponent over [k, k+1)."""

    exponent: float
    lo: int
    hi: int

    def __post_init__(self):
        if self.exponent <= 0:
            raise ValidationError(f"power-law exponent must be positive; got {self.exponent}")
        if self.lo < 1 or self.hi < self.lo:
            raise ValidationError(f"need 1 <= lo <= hi; got lo={self.lo}, hi={self.hi}")


def _primitive(x, exponent: float):
    # antiderivative of x^-exponent; the log branch covers exponent == 1
    if exponent == 1.0:
        return np.log(x)
    p = 1.0 - exponent
    return np.power(np.asarray(x, dtype=float), p) / p


def tpl_pmf(spec: PowerLawSpec, k) -> float | np.ndarray:
    """P(X = k) for k in [lo, hi]."""
    k_arr = np.asarray(k)
    if np.any(k_arr < spec.lo) or np.any(k_arr > spec.hi):
        raise ValidationError(f"k out of range [{spec.lo}, {spec.hi}]")
    norm = _primitive(spec.hi + 1, spec.exponent) - _primitive(spec.lo, spec.exponent)
    p = (_primitive(k_arr + 1, spec.exponent) - _primitive(k_arr, spec.exponent)) / norm
    return float(p) if np.isscalar(k) else p


def tpl_pmf_table(spec: PowerLawSpec) -> np.ndarray:
    """Full pmf over lo..hi, in order."""
    return tpl_pmf(spec, np.arange(spec.lo, spec.hi + 1))


def tpl_mean(spec: PowerLawSpec) -> float:
    ks = np.arange(spec.lo, spec.hi + 1)
    return float(np.sum(ks * tpl_pmf(spec, ks)))


def sample_tpl(spec: PowerLawSpec, rng: np.random.Generator, size=None):
    """Inverse-CDF sampling on the continuous closed form, then bucket by floor."""
    u = rng.random(size)
    f_lo = _primitive(spec.lo, spec.exponent)
    f_hi = _primitive(spec.hi + 1, spec.exponent)
    target = f_lo + u * (f_hi - f_lo)
    if spec.exponent == 1.0:
        x = np.exp(target)
    else:
        p = 1.0 - spec.exponent
        x = np.power(p * target, 1.0 / p)
    k = np.floor(x).astype(np.int64)
    k = np.clip(k, spec.lo, spec.hi)
    return int(k) if size is None else k


def random_round(x, rng: np.random.Generator):
    """Round x >= 0 down or up at random so the result is unbiased: E[result] = x."""
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr < 0):
        raise ValidationError("random_round expects x >= 0")
    base = np.floor(x_arr)
    frac = x_arr - base
    up = rng.random(x_arr.shape if x_arr.ndim else None) < frac
    out = (base + up).astype(np.int64)
    return int(out) if np.isscalar(x) or x_arr.ndim == 0 else out


def build_degree_sequence(
    params: Parameters, rng: np.random.Generator, explicit=None
) -> np.ndarray:
    """Phase-1 degrees: n iid truncated power-law draws, sorted non-increasing, even sum."""
    if explicit is not None:
        degrees = np.asarray(explicit, dtype=np.int64)
        if degrees.shape != (params.n,):
            raise ValidationError(
                f"explicit degree sequence has length {degrees.size}, expected n={params.n}"
            )
        if np.any(degrees < params.delta) or np.any(degrees > params.Delta):
            raise ValidationError("explicit degrees must lie in [delta, Delta]")
        from_sampling = False
    else:
        spec = PowerLawSpec(params.gamma, params.delta, params.Delta)
        degrees = sample_tpl(spec, rng, params.n)
        from_sampling = True

    degrees = np.sort(degrees)[::-1]
    if degrees.sum() % 2 == 1:
        if degrees[0] == params.delta:
            msg = "odd degree sum with max degree already at delta; cannot decrement d_1"
            if from_sampling:
                raise GenerationError(msg)
            raise ValidationError(msg)
        degrees = degrees.copy()
        degrees[0] -= 1
        degrees = np.sort(degrees)[::-1]
    return degrees


@dataclass
class CommunitySizeSequence:
    """Primary sizes (summing to n - s0 exactly) and their grown counterparts."""

    primary_sizes: np.ndarray
    grown_sizes: np.ndarray
    over_cap_count: int = 0  # samples pushed past floor(S/eta) by the overshoot adjustment
    capped_at_n_hat: int = 0  # grown sizes clipped to the element count

    @property
    def count(self) -> int:
        return int(self.primary_sizes.size)


def _adjust_overshoot(samples: np.ndarray, n_hat: int, lo: int, rng: np.random.Generator):
    """Trim an overshooting sample sequence so it sums to n_hat exactly."""
    total = int(samples.sum())
    a = total - n_hat
    if a <= 0:
        return samples
    c = int(samples[-1])
    if c >= a + lo:
        samples = samples.copy()
        samples[-1] -= a
        return samples
    # deleting the last sample leaves a deficit of c - a, paid by +1 increments
    samples = samples[:-1].copy()
    need = c - a
    m = samples.size
    full, rem = divmod(need, m)
    if full:
        samples += full
    if rem:
        idx = rng.choice(m, size=rem, replace=False)
        samples[idx] += 1
    return samples


def build_community_size_sequences(
    params: Parameters, rng: np.random.Generator, explicit=None
) -> CommunitySizeSequence:
    """Phase-3 sizes: draw primaries until they cover n - s0, trim the overshoot, grow by eta."""
    n_hat = params.n_hat
    lo, hi = params.primary_size_min, params.primary_size_max
    if n_hat == 0:
        empty = np.zeros(0, dtype=np.int64)
        return CommunitySizeSequence(empty, empty.copy())
    if n_hat < lo:
        raise ValidationError(f"n - s0 = {n_hat} below the minimum primary size {lo}")

    if explicit is not None:
        primary = np.asarray(explicit, dtype=np.int64)
        if np.any(primary < lo) or np.any(primary > hi):
            raise ValidationError(
                f"explicit primary sizes must lie in [{lo}, {hi}] = [ceil(s/eta), floor(S/eta)]"
            )
        if primary.sum() != n_hat:
            raise ValidationError(
                f"explicit primary sizes sum to {primary.sum()}, expected n - s0 = {n_hat}"
            )
    else:
        spec = PowerLawSpec(params.beta, lo, hi)
        mean = max(tpl_mean(spec), 1.0)
        chunks = []
        total = 0
        while total < n_hat:
            k = max(16, int((n_hat - total) / mean) + 8)
            batch = sample_tpl(spec, rng, k)
            chunks.append(batch)
            total += int(batch.sum())
        samples = np.concatenate(chunks)
        cut = int(np.searchsorted(np.cumsum(samples), n_hat))
        primary = _adjust_overshoot(samples[: cut + 1], n_hat, lo, rng)

    primary = np.sort(primary)[::-1]
    over_cap = int(np.count_nonzero(primary > hi))
    grown = random_round(params.eta * primary, rng)
    capped = int(np.count_nonzero(grown > n_hat))
    grown = np.minimum(grown, n_hat)
    return CommunitySizeSequence(primary, grown, over_cap, capped)
