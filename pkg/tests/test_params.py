"""Parameter validation rules."""

import pytest

from abcdoo.errors import ValidationError
from abcdoo.params import Parameters


def test_defaults_are_valid():
    p = Parameters(n=1000)
    assert p.n_hat == 1000
    assert p.primary_size_min == 10
    assert p.primary_size_max == 100


def test_primary_size_range_scales_with_membership_mean():
    p = Parameters(n=1000, eta=3.0, s=10, S=100)
    assert p.primary_size_min == 4  # ceil(10/3)
    assert p.primary_size_max == 33  # floor(100/3)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(n=0),
        dict(n=-5),
        dict(n=10, s0=-1),
        dict(n=10, s0=11),
        dict(n=100, eta=0.9),
        dict(n=100, dim=0),
        dict(n=100, rho=1.5),
        dict(n=100, rho=-1.5),
        dict(n=100, gamma=0.0),
        dict(n=100, delta=0),
        dict(n=100, delta=6, Delta=5),
        dict(n=100, beta=-1.0),
        dict(n=100, delta=5, s=5),  # s must exceed the min degree
        dict(n=100, s=10, S=9),
        dict(n=100, xi=-0.1),
        dict(n=100, xi=1.1),
        dict(n=100, seed=0.5),
        dict(n=100, eta=4.0, s=10, S=11),  # ceil(10/4)=3 > floor(11/4)=2
        dict(n=12, s0=8, eta=1.0, s=10, S=20),  # n - s0 below min primary size
    ],
)
def test_invalid_parameters_rejected(kwargs):
    with pytest.raises(ValidationError):
        Parameters(**kwargs)


def test_all_outlier_configuration_is_allowed():
    p = Parameters(n=10, s0=10, s=10, S=20)
    assert p.n_hat == 0


def test_integer_like_floats_are_normalized():
    p = Parameters(n=100.0, delta=5.0, Delta=50.0, seed=3.0)
    assert isinstance(p.n, int) and p.n == 100
    assert isinstance(p.seed, int) and p.seed == 3


def test_as_dict_lists_the_knobs_only():
    d = Parameters(n=100).as_dict()
    assert "rho_tolerance" not in d
    assert set(d) == {
        "n", "s0", "eta", "dim", "rho", "gamma",
        "delta", "Delta", "beta", "s", "S", "xi", "seed",
    }
    assert d["n"] == 100
