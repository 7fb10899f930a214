import math

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from tonsura import (
    GandHSpec,
    GaussianPairSpec,
    NullEnvelope,
    gen_gaussian_pair,
    gh_transform,
    null_envelope,
    pearson,
)


def test_gaussian_pair_is_deterministic_per_seed():
    spec = GaussianPairSpec(500, 0.3, 42)
    a = gen_gaussian_pair(spec)
    b = gen_gaussian_pair(spec)
    assert_array_equal(a.xs, b.xs)
    assert_array_equal(a.ys, b.ys)
    c = gen_gaussian_pair(GaussianPairSpec(500, 0.3, 43))
    assert not np.array_equal(a.xs, c.xs)


def test_gaussian_pair_metadata_and_size():
    s = gen_gaussian_pair(GaussianPairSpec(64, -0.7, 9))
    assert s.n == 64
    assert s.meta["rho"] == -0.7
    assert s.meta["seed"] == 9
    assert s.meta["generator"] == "pcg64"


def test_rho_one_reuses_the_same_draws_bit_for_bit():
    s = gen_gaussian_pair(GaussianPairSpec(1000, 1.0, 7))
    assert_array_equal(s.xs, s.ys)
    m = gen_gaussian_pair(GaussianPairSpec(1000, -1.0, 7))
    assert_array_equal(m.xs, -m.ys)


def test_sample_correlation_tracks_target_rho():
    s = gen_gaussian_pair(GaussianPairSpec(200_000, 0.5, 11))
    r = pearson(s).value
    # se of r at this n is about 0.0017
    assert abs(r - 0.5) < 0.01


def test_gaussian_pair_spec_validation():
    with pytest.raises(ValueError):
        GaussianPairSpec(1, 0.5, 0)
    with pytest.raises(ValueError):
        GaussianPairSpec(10, 1.5, 0)
    with pytest.raises(ValueError):
        GaussianPairSpec(10, 0.5, -1)
    with pytest.raises(ValueError):
        GaussianPairSpec(10, 0.5, 2**64)


def test_gh_identity_when_both_parameters_vanish():
    zs = np.linspace(-3, 3, 41)
    out = gh_transform(zs, GandHSpec(0.0, 0.0, standardize=False))
    assert_array_equal(out, zs)


def test_gh_transform_fixes_origin_without_standardization():
    for g, h in ((0.5, 0.0), (0.0, 0.3), (0.7, 0.2)):
        out = gh_transform(np.array([0.0, 1.0]), GandHSpec(g, h, standardize=False))
        assert out[0] == 0.0


def test_gh_small_g_approaches_the_g_zero_branch():
    zs = np.linspace(-2.5, 2.5, 101)
    at_zero = gh_transform(zs, GandHSpec(0.0, 0.1, standardize=False))
    near_zero = gh_transform(zs, GandHSpec(1e-9, 0.1, standardize=False))
    assert_allclose(near_zero, at_zero, rtol=1e-7, atol=1e-12)


def test_gh_transform_is_strictly_increasing():
    zs = np.linspace(-6, 6, 501)
    for g, h in ((0.5, 0.0), (-0.5, 0.0), (0.0, 0.4), (0.9, 0.3)):
        out = gh_transform(zs, GandHSpec(g, h, standardize=False))
        assert np.all(np.diff(out) > 0), (g, h)


def test_gh_known_value_at_unit_argument():
    # (e^g - 1)/g * e^(h/2)
    out = gh_transform(np.array([1.0]), GandHSpec(0.5, 0.2, standardize=False))
    expected = math.expm1(0.5) / 0.5 * math.exp(0.1)
    assert_allclose(out[0], expected, rtol=1e-15)


def test_gh_rejects_huge_arguments_and_bad_h():
    with pytest.raises(ValueError):
        gh_transform(np.array([0.0, 39.0]), GandHSpec(0.1, 0.1))
    with pytest.raises(ValueError):
        GandHSpec(0.1, -0.2)


def test_gh_standardization_recenters_and_rescales():
    rng = np.random.default_rng(3)
    zs = rng.normal(size=5000)
    out = gh_transform(zs, GandHSpec(0.8, 0.1))
    assert_allclose(out.mean(), 0.0, atol=1e-12)
    assert_allclose(out.var(ddof=1), 1.0, rtol=1e-12)


def test_gh_standardization_rejects_degenerate_input():
    with pytest.raises(ValueError):
        gh_transform(np.zeros(4), GandHSpec(0.5, 0.0))
    with pytest.raises(ValueError):
        gh_transform(np.array([1.0]), GandHSpec(0.5, 0.0))


def test_gh_sample_skewness_matches_closed_form():
    # for h = 0 the third standardized moment is (w + 2) sqrt(w - 1), w = e^(g^2)
    g = 0.5
    w = math.exp(g * g)
    target = (w + 2.0) * math.sqrt(w - 1.0)
    rng = np.random.default_rng(17)
    zs = rng.normal(size=400_000)
    out = gh_transform(zs, GandHSpec(g, 0.0))
    skew = np.mean(out**3) / np.mean(out**2) ** 1.5
    assert abs(skew - target) < 0.05


def _flat_scan(series):
    return [(0.0, 1.0), (1.0, 2.0)]


def test_envelope_shapes_and_grid():
    env = null_envelope(_flat_scan, n=50, matched_rho=0.0, replicates=8, seed=1)
    assert env.xs == (0.0, 1.0)
    assert_array_equal(env.mean, [1.0, 2.0])
    assert_array_equal(env.lo, [1.0, 2.0])
    assert_array_equal(env.hi, [1.0, 2.0])
    assert_array_equal(env.present, [8, 8])
    assert_array_equal(env.unreliable, [False, False])
    assert env.replicates == 8
    assert env.seed == 1


def test_envelope_is_deterministic_and_seed_sensitive():
    def scan(series):
        return [(0.0, pearson(series).value)]

    a = null_envelope(scan, n=80, matched_rho=0.3, replicates=20, seed=5)
    b = null_envelope(scan, n=80, matched_rho=0.3, replicates=20, seed=5)
    assert_array_equal(a.mean, b.mean)
    assert_array_equal(a.lo, b.lo)
    assert_array_equal(a.hi, b.hi)
    c = null_envelope(scan, n=80, matched_rho=0.3, replicates=20, seed=6)
    assert a.mean[0] != c.mean[0]


def test_envelope_band_brackets_mean_and_quantiles_are_ordered():
    def scan(series):
        return [(0.0, pearson(series).value)]

    env = null_envelope(scan, n=60, matched_rho=0.2, replicates=200, seed=2)
    assert env.lo[0] <= env.mean[0] <= env.hi[0]
    assert env.lo[0] < env.hi[0]
    # at rho = 0.2 and n = 60 the 5th and 95th percentiles straddle the target
    assert env.lo[0] < 0.2 < env.hi[0]


def test_envelope_single_replicate_band_collapses():
    def scan(series):
        return [(0.0, pearson(series).value)]

    env = null_envelope(scan, n=40, matched_rho=0.0, replicates=1, seed=9)
    assert env.lo[0] == env.mean[0] == env.hi[0]


def test_envelope_gap_accounting_and_unreliable_flag():
    calls = {"i": 0}

    def scan(series):
        calls["i"] += 1
        # second grid point present in only 1 of 4 replicates
        v = 0.5 if calls["i"] == 1 else None
        return [(0.0, 1.0), (5.0, v)]

    env = null_envelope(scan, n=30, matched_rho=0.0, replicates=4, seed=0)
    assert_array_equal(env.present, [4, 1])
    assert_array_equal(env.unreliable, [False, True])
    assert env.mean[1] == 0.5
    assert env.lo[1] == 0.5


def test_envelope_all_gaps_at_a_point():
    def scan(series):
        return [(0.0, 1.0), (5.0, None)]

    env = null_envelope(scan, n=30, matched_rho=0.0, replicates=3, seed=0)
    assert env.present[1] == 0
    assert env.unreliable[1]
    assert math.isnan(env.mean[1]) and math.isnan(env.lo[1]) and math.isnan(env.hi[1])


def test_envelope_rejects_shifting_grids():
    calls = {"i": 0}

    def scan(series):
        calls["i"] += 1
        return [(float(calls["i"]), 1.0)]

    with pytest.raises(ValueError):
        null_envelope(scan, n=30, matched_rho=0.0, replicates=2, seed=0)


def test_envelope_keep_replicates_exposes_raw_values():
    def scan(series):
        return [(0.0, pearson(series).value)]

    env = null_envelope(scan, n=40, matched_rho=0.1, replicates=6, seed=4, keep_replicates=True)
    assert env.values is not None
    assert len(env.values) == 6
    vals = [row[0] for row in env.values]
    assert_allclose(np.mean(vals), env.mean[0], rtol=1e-12)


def test_envelope_validation():
    with pytest.raises(ValueError):
        NullEnvelope(
            xs=(0.0,), mean=(1.0, 2.0), lo=(0.0,), hi=(2.0,),
            present=(1,), unreliable=(False,), replicates=1, seed=0,
        )
    with pytest.raises(ValueError):
        null_envelope(_flat_scan, n=10, matched_rho=0.0, replicates=0, seed=0)
    with pytest.raises(ValueError):
        null_envelope(_flat_scan, n=10, matched_rho=0.0, replicates=2, seed=0, band=(95.0, 5.0))
