"""Search space, sampling, and dataset invariants."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dkibo.errors import (
    DimensionMismatchError,
    NonFiniteValueError,
    OutOfBoundsError,
)
from dkibo.space import Dataset, SearchSpace, STREAM_INIT, stream


def test_sampling_is_deterministic_given_seed():
    space = SearchSpace([0.0, 0.0], [1.0, 1.0])
    a = space.sample_uniform(3, stream(7, STREAM_INIT))
    b = space.sample_uniform(3, stream(7, STREAM_INIT))
    assert np.array_equal(a, b)


def test_different_seeds_differ():
    space = SearchSpace([0.0], [1.0])
    a = space.sample_uniform(5, stream(1, STREAM_INIT))
    b = space.sample_uniform(5, stream(2, STREAM_INIT))
    assert not np.array_equal(a, b)


def test_degenerate_bounds_rejected():
    with pytest.raises(ValueError):
        SearchSpace([2.0, 0.0], [2.0, 1.0])
    with pytest.raises(ValueError):
        SearchSpace([3.0], [2.0])


def test_sample_mean_matches_uniform_law():
    # Law-of-large-numbers check through the sampler itself.
    space = SearchSpace([-5.0], [5.0])
    draws = space.sample_uniform(1000, stream(1, STREAM_INIT))
    assert abs(draws.mean()) < 0.5


def test_normalize_examples():
    space = SearchSpace([0.0], [10.0])
    assert np.allclose(space.normalize(np.array([5.0])), [0.5])
    assert np.array_equal(space.normalize(np.array([0.0])), [0.0])


def test_normalize_rejects_out_of_bounds():
    space = SearchSpace([0.0], [1.0])
    with pytest.raises(OutOfBoundsError):
        space.normalize(np.array([1.5]))


def test_round_trip_on_random_points():
    rng = np.random.default_rng(0)
    space = SearchSpace([-3.0, 0.1, 100.0], [9.0, 0.2, 450.0])
    pts = space.sample_uniform(100, rng)
    back = space.denormalize(space.normalize(pts))
    assert np.max(np.abs(back - pts)) < 1e-12


@settings(max_examples=60, deadline=None)
@given(
    lows=st.lists(st.floats(-1e3, 1e3), min_size=1, max_size=6),
    widths=st.lists(st.floats(1e-3, 1e3), min_size=6, max_size=6),
    seed=st.integers(0, 2**32 - 1),
)
def test_sampling_never_escapes_bounds(lows, widths, seed):
    lower = np.array(lows)
    upper = lower + np.array(widths[: len(lows)])
    space = SearchSpace(lower, upper)
    pts = space.sample_uniform(50, np.random.default_rng(seed))
    assert np.all(pts >= lower) and np.all(pts <= upper)
    z = space.normalize(pts)
    assert np.all(z >= 0.0) and np.all(z <= 1.0)
    assert np.max(np.abs(space.denormalize(z) - pts)) <= 1e-9 * np.max(upper - lower)


def test_dataset_appends_preserve_order():
    space = SearchSpace([0.0], [1.0])
    data = Dataset(space)
    for v in (0.5, 0.1, 0.9):
        data.append(np.array([v]), v * 2)
    assert [o.x[0] for o in data.observations] == [0.5, 0.1, 0.9]
    assert np.array_equal(data.y, [1.0, 0.2, 1.8])


def test_dataset_validation():
    space = SearchSpace([0.0], [1.0])
    data = Dataset(space)
    with pytest.raises(DimensionMismatchError):
        data.append(np.array([0.1, 0.2]), 1.0)
    with pytest.raises(OutOfBoundsError):
        data.append(np.array([1.2]), 1.0)
    with pytest.raises(NonFiniteValueError):
        data.append(np.array([0.5]), float("nan"))
    assert len(data) == 0
