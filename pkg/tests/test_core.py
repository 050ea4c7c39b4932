from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from concave_majorant import (BernoulliLattice, CapacityExceeded, Cauchy, Empirical, FiniteSupport,
                              Gaussian, InvalidInput, InvalidModel, Rademacher, RngStream,
                              SymmetricStable, Uniform, build_walk, check_assumption_a,
                              sample_increments, sample_walk)


def test_empty_increments(rng):
    assert sample_increments(Rademacher(), 0, rng) == []


def test_empirical_is_a_permutation():
    seen = set()
    for seed in range(200):
        out = sample_increments(Empirical((3, -1, -2)), 3, RngStream(seed))
        assert sorted(out) == [-2, -1, 3]
        seen.add(tuple(out))
    assert len(seen) == 6


def test_empirical_length_mismatch(rng):
    with pytest.raises(InvalidModel):
        sample_increments(Empirical((1, 2)), 3, rng)


def test_bernoulli_half_mean(rng):
    n = 10**5
    x = np.array([float(v) for v in sample_increments(BernoulliLattice(Fraction(1, 2)), n, rng)])
    assert abs(x.mean()) < 4 / np.sqrt(n)


@pytest.mark.parametrize("incs, values", [([], [0]), ([1, -2, 3], [0, 1, -1, 2]),
                                          ([3, -1, -2], [0, 3, 2, 0])])
def test_build_walk_prefix_sums(incs, values):
    assert list(build_walk(incs).values) == values


def test_build_walk_rejects_mixed():
    with pytest.raises(InvalidInput):
        build_walk([1, 0.5])


def test_exact_values_are_reduced():
    w = build_walk([Fraction(2, 4), Fraction(-3, 6)])
    assert w.values[1] == Fraction(1, 2) and w.values[1].denominator == 2


@pytest.mark.parametrize("incs, ok", [([3, -1, -2], True), ([1, -1, 1, -1], False), ([5], True)])
def test_assumption_a(incs, ok):
    assert check_assumption_a([Fraction(x) for x in incs]) is ok


def test_assumption_a_capacity():
    with pytest.raises(CapacityExceeded):
        check_assumption_a([Fraction(2**i) for i in range(25)])


def test_model_validation():
    with pytest.raises(InvalidModel):
        FiniteSupport(((0, Fraction(1, 2)), (1, Fraction(1, 3))))
    with pytest.raises(InvalidModel):
        Gaussian(0, -1)
    with pytest.raises(InvalidModel):
        SymmetricStable(2.5)


def test_rng_reproducible_and_forks_differ():
    a = RngStream(7).fork("x").generator.random(5)
    b = RngStream(7).fork("x").generator.random(5)
    c = RngStream(7).fork("y").generator.random(5)
    assert np.array_equal(a, b) and not np.array_equal(a, c)


@pytest.mark.parametrize("model", [Gaussian(), Cauchy(), Uniform(-1, 1), SymmetricStable(1.5)])
def test_continuous_subset_means_distinct(model):
    gen = RngStream(3).fork(repr(model))
    for _ in range(200):
        incs = sample_increments(model, 8, gen)
        assert check_assumption_a([Fraction(x) for x in incs])


@given(st.lists(st.integers(-50, 50), max_size=30))
def test_walk_roundtrip(incs):
    w = build_walk(incs)
    diffs = [b - a for a, b in zip(w.values, w.values[1:])]
    assert build_walk(diffs) == w


@given(st.lists(st.floats(-1e6, 1e6, allow_nan=False), min_size=1, max_size=30))
def test_float_walk_scaled_sums_exact(incs):
    w = build_walk(incs)
    p, d = w.scaled_sums
    exact = [Fraction(0)]
    for x in incs:
        exact.append(exact[-1] + Fraction(x))
    assert [Fraction(v, d) for v in p] == exact


def test_sample_walk_float(rng):
    w = sample_walk(Gaussian(), 10, rng)
    assert w.n == 10 and not w.exact
