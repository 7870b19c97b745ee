"""Truncated power law, random rounding, and the integer sequence builders."""

import numpy as np
import pytest
from scipy import stats

from abcdoo.errors import GenerationError, ValidationError
from abcdoo.params import Parameters
from abcdoo.sampling import (
    PowerLawSpec,
    _adjust_overshoot,
    build_community_size_sequences,
    build_degree_sequence,
    random_round,
    sample_tpl,
    tpl_mean,
    tpl_pmf,
    tpl_pmf_table,
)


def test_tpl_pmf_degenerate_range():
    assert tpl_pmf(PowerLawSpec(2.5, 1, 1), 1) == 1.0


def test_tpl_pmf_two_point_values():
    # exponent 2 on {1, 2}: (1 - 1/2) / (1 - 1/3) and its complement
    spec = PowerLawSpec(2.0, 1, 2)
    assert tpl_pmf(spec, 1) == pytest.approx(0.75)
    assert tpl_pmf(spec, 2) == pytest.approx(0.25)


def test_tpl_pmf_out_of_range_rejected():
    spec = PowerLawSpec(2.0, 5, 10)
    with pytest.raises(ValidationError):
        tpl_pmf(spec, 4)
    with pytest.raises(ValidationError):
        tpl_pmf(spec, 11)


def test_tpl_pmf_sums_to_one_for_random_specs():
    rng = np.random.default_rng(42)
    for _ in range(100):
        lo = int(rng.integers(1, 50))
        hi = lo + int(rng.integers(0, 200))
        exponent = float(rng.uniform(0.2, 4.0))
        total = tpl_pmf_table(PowerLawSpec(exponent, lo, hi)).sum()
        assert abs(total - 1.0) < 1e-12


def test_tpl_pmf_log_branch_exponent_one():
    # the exponent-1 antiderivative switches to log; pmf must still normalize
    spec = PowerLawSpec(1.0, 3, 17)
    assert tpl_pmf_table(spec).sum() == pytest.approx(1.0, abs=1e-12)
    assert tpl_mean(spec) > 3.0


def test_invalid_power_law_specs_rejected():
    with pytest.raises(ValidationError):
        PowerLawSpec(0.0, 1, 5)
    with pytest.raises(ValidationError):
        PowerLawSpec(2.0, 0, 5)
    with pytest.raises(ValidationError):
        PowerLawSpec(2.0, 5, 4)


def test_sample_tpl_point_mass():
    rng = np.random.default_rng(0)
    draws = sample_tpl(PowerLawSpec(3.0, 5, 5), rng, 1000)
    assert np.all(draws == 5)


def test_sample_tpl_two_point_frequencies():
    rng = np.random.default_rng(7)
    draws = sample_tpl(PowerLawSpec(2.0, 1, 2), rng, 10**5)
    assert np.mean(draws == 1) == pytest.approx(0.75, abs=0.01)


def test_sample_tpl_chi_square_gof():
    spec = PowerLawSpec(2.5, 5, 100)
    rng = np.random.default_rng(11)
    draws = sample_tpl(spec, rng, 10**5)
    observed = np.bincount(draws, minlength=spec.hi + 1)[spec.lo : spec.hi + 1]
    expected = tpl_pmf_table(spec) * draws.size
    result = stats.chisquare(observed, expected)
    assert result.pvalue > 0.01


def test_sample_tpl_scalar_and_bounds():
    rng = np.random.default_rng(3)
    spec = PowerLawSpec(1.8, 2, 9)
    one = sample_tpl(spec, rng)
    assert isinstance(one, int) and 2 <= one <= 9
    many = sample_tpl(spec, rng, 500)
    assert many.min() >= 2 and many.max() <= 9


def test_random_round_integer_is_identity():
    rng = np.random.default_rng(0)
    assert all(random_round(3.0, rng) == 3 for _ in range(100))


def test_random_round_half_hits_both_sides():
    rng = np.random.default_rng(1)
    draws = {random_round(2.5, rng) for _ in range(200)}
    assert draws == {2, 3}


def test_random_round_mean_unbiased():
    rng = np.random.default_rng(5)
    draws = random_round(np.full(10**5, 2.3), rng)
    assert draws.mean() == pytest.approx(2.3, abs=0.01)
    assert set(np.unique(draws)) == {2, 3}


def test_random_round_rejects_negative():
    rng = np.random.default_rng(0)
    with pytest.raises(ValidationError):
        random_round(-0.5, rng)


def test_degree_sequence_single_node():
    p = Parameters(n=1, delta=4, Delta=4, eta=5.0, s=5, S=25)
    degrees = build_degree_sequence(p, np.random.default_rng(0))
    assert degrees.tolist() == [4]


def test_degree_sequence_parity_fix_decrements_top():
    p = Parameters(n=3, delta=4, Delta=6, eta=2.0, s=5, S=10)
    degrees = build_degree_sequence(p, np.random.default_rng(0), explicit=[5, 5, 5])
    assert degrees.tolist() == [5, 5, 4]
    assert degrees.sum() % 2 == 0


def test_degree_sequence_explicit_odd_at_delta_rejected():
    p = Parameters(n=3, delta=5, Delta=8, eta=2.0, s=6, S=10)
    with pytest.raises(ValidationError):
        build_degree_sequence(p, np.random.default_rng(0), explicit=[5, 5, 5])


def test_degree_sequence_sampled_odd_at_delta_is_generation_error():
    p = Parameters(n=3, delta=5, Delta=5, eta=2.0, s=6, S=10, seed=0)
    # every sample is forced to 5; an odd sum cannot be repaired
    with pytest.raises(GenerationError):
        build_degree_sequence(p, np.random.default_rng(0))


def test_degree_sequence_explicit_out_of_range_rejected():
    p = Parameters(n=2, delta=3, Delta=6, eta=2.0, s=4, S=10)
    with pytest.raises(ValidationError):
        build_degree_sequence(p, np.random.default_rng(0), explicit=[3, 7])
    with pytest.raises(ValidationError):
        build_degree_sequence(p, np.random.default_rng(0), explicit=[3, 3, 3])


def test_degree_sequence_sorted_even_and_in_range():
    for seed in range(20):
        p = Parameters(n=500, gamma=2.3, delta=2, Delta=40, s=3, S=60, seed=seed)
        degrees = build_degree_sequence(p, np.random.default_rng(seed))
        assert degrees.sum() % 2 == 0
        assert np.all(degrees[:-1] >= degrees[1:])
        assert degrees.min() >= 2 and degrees.max() <= 40


def test_degree_sequence_distribution_gof():
    p = Parameters(n=10**5, gamma=2.5, delta=5, Delta=100, s=6, S=200)
    degrees = build_degree_sequence(p, np.random.default_rng(23))
    spec = PowerLawSpec(2.5, 5, 100)
    observed = np.bincount(degrees, minlength=101)[5:101]
    expected = tpl_pmf_table(spec) * degrees.size
    # the parity fix moves at most one sample between adjacent bins
    result = stats.chisquare(observed, expected)
    assert result.pvalue > 0.01


def test_overshoot_reduces_last_sample():
    samples = np.array([60, 50], dtype=np.int64)
    out = _adjust_overshoot(samples, 100, 10, np.random.default_rng(0))
    assert out.tolist() == [60, 40]


def test_overshoot_exact_sum_untouched():
    samples = np.array([60, 40], dtype=np.int64)
    out = _adjust_overshoot(samples, 100, 10, np.random.default_rng(0))
    assert out.tolist() == [60, 40]


def test_overshoot_deletes_and_spreads_increments():
    # a=10, c=20 < 10+15: delete the last sample, pay the deficit of 10
    # over three survivors as +3 each plus one extra +1
    samples = np.array([30, 30, 30, 20], dtype=np.int64)
    out = _adjust_overshoot(samples, 100, 15, np.random.default_rng(2))
    assert out.sum() == 100
    assert len(out) == 3
    assert sorted(out.tolist()) == [33, 33, 34]


def test_overshoot_delete_branch_single_survivor():
    samples = np.array([60, 50], dtype=np.int64)
    out = _adjust_overshoot(samples, 102, 45, np.random.default_rng(0))
    assert out.tolist() == [102]


def test_size_sequences_sum_exactly():
    for seed in range(20):
        p = Parameters(n=2000, s0=100, eta=1.7, xi=0.3, beta=1.6, s=8, S=120, seed=seed)
        seq = build_community_size_sequences(p, np.random.default_rng(seed))
        assert seq.primary_sizes.sum() == p.n_hat
        assert np.all(seq.primary_sizes[:-1] >= seq.primary_sizes[1:])
        lo, hi = p.primary_size_min, p.primary_size_max
        assert seq.primary_sizes.min() >= lo
        assert seq.primary_sizes.max() <= hi + 1  # adjustment may add one past the cap
        assert np.all(seq.grown_sizes <= p.n_hat)
        scaled = p.eta * seq.primary_sizes
        assert np.all(seq.grown_sizes >= np.floor(scaled))
        assert np.all(seq.grown_sizes <= np.ceil(scaled))


def test_size_sequences_eta_one_no_growth():
    p = Parameters(n=500, eta=1.0, s=6, S=60)
    seq = build_community_size_sequences(p, np.random.default_rng(9))
    assert np.array_equal(seq.primary_sizes, seq.grown_sizes)


def test_size_sequences_integer_growth_is_exact():
    # a size-40 community under eta=1.75 always grows to exactly 70
    p = Parameters(n=100, eta=1.75, s=10, S=70)
    seq = build_community_size_sequences(
        p, np.random.default_rng(0), explicit=[40, 40, 20]
    )
    assert seq.grown_sizes.tolist() == [70, 70, 35]


def test_size_sequences_grown_capped_at_n_hat():
    p = Parameters(n=12, eta=2.0, s=8, S=24)
    seq = build_community_size_sequences(p, np.random.default_rng(0), explicit=[12])
    assert seq.grown_sizes.tolist() == [12]
    assert seq.capped_at_n_hat == 1


def test_size_sequences_grown_mass_matches_eta():
    # E[sum of grown sizes] = eta * (n - s0); check the mean over 50 seeds
    totals = []
    for seed in range(50):
        p = Parameters(n=10**4, eta=2.0, s=10, S=100, seed=seed)
        seq = build_community_size_sequences(p, np.random.default_rng(seed))
        totals.append(seq.grown_sizes.sum())
    mean = np.mean(totals)
    assert abs(mean - 2.0 * 10**4) <= 0.02 * 2.0 * 10**4


def test_size_sequences_explicit_validation():
    p = Parameters(n=100, eta=1.0, s=10, S=60)
    with pytest.raises(ValidationError):
        build_community_size_sequences(p, np.random.default_rng(0), explicit=[50, 49])
    with pytest.raises(ValidationError):
        build_community_size_sequences(p, np.random.default_rng(0), explicit=[95, 5])


def test_size_sequences_n_hat_below_minimum_rejected():
    with pytest.raises(ValidationError):
        Parameters(n=5, eta=1.0, s=10, S=60)
