"""Counter-based RNG: scalar/vector agreement and stream quality basics."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from montyhall import rng

seeds = st.integers(min_value=0, max_value=(1 << 64) - 1)


@given(seed=seeds, start=st.integers(min_value=0, max_value=10**9))
@settings(max_examples=50)
def test_vector_matches_scalar(seed, start):
    for slot in (rng.CAR_SLOT, rng.HOST_SLOT, rng.MIX_SLOT):
        vector = rng.draw_u53_array(seed, start, start + 64, slot)
        scalar = [rng.draw_u53(seed, trial, slot) for trial in range(start, start + 64)]
        assert vector.tolist() == scalar


def test_draws_are_53_bit():
    draws = rng.draw_u53_array(7, 0, 10_000, rng.CAR_SLOT)
    assert int(draws.max()) < 1 << 53
    assert rng.draw_unit(7, 3, rng.HOST_SLOT) == rng.draw_u53(7, 3, rng.HOST_SLOT) * 2.0**-53


def test_slots_are_distinct_streams():
    car = rng.draw_u53_array(7, 0, 1000, rng.CAR_SLOT)
    host = rng.draw_u53_array(7, 0, 1000, rng.HOST_SLOT)
    assert not np.array_equal(car, host)


def test_threshold_matches_float_comparison():
    # u < threshold_u53(p) must agree with the exact float-vs-Fraction
    # comparison used by the scalar path, including awkward denominators.
    for p in (Fraction(0), Fraction(1), Fraction(1, 3), Fraction(1, 10), Fraction(7, 13)):
        threshold = rng.threshold_u53(p)
        for u in (0, 1, threshold - 1, threshold, threshold + 1, (1 << 53) - 1):
            if not 0 <= u < (1 << 53):
                continue
            assert (u < threshold) == (u * 2.0**-53 < p), (p, u)


def test_threshold_endpoints():
    assert rng.threshold_u53(Fraction(0)) == 0
    assert rng.threshold_u53(Fraction(1)) == 1 << 53


def test_car_index_covers_all_boxes_roughly_uniformly():
    draws = rng.draw_u53_array(42, 0, 30_000, rng.CAR_SLOT)
    cars = (np.uint64(3) * draws) >> np.uint64(53)
    counts = np.bincount(cars.astype(np.int64), minlength=3)
    assert counts.sum() == 30_000
    # within 5 sigma of 10_000 each
    assert all(abs(int(c) - 10_000) < 5 * (30_000 * (1 / 3) * (2 / 3)) ** 0.5 for c in counts)


def test_derive_seed_decorrelates():
    children = {rng.derive_seed(1729, k) for k in range(100)}
    assert len(children) == 100
    assert 1729 not in children


def test_validate_seed():
    assert rng.validate_seed(0) == 0
    assert rng.validate_seed((1 << 64) - 1) == (1 << 64) - 1
    with pytest.raises(ValueError):
        rng.validate_seed(-1)
    with pytest.raises(ValueError):
        rng.validate_seed(1 << 64)
