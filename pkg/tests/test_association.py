import itertools
import math

import numpy as np
import pytest
import scipy.stats
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from tonsura import (
    ConstantSubset,
    DegenerateSubset,
    PairedSeries,
    pearson,
    somers_dba,
    spearman,
)
from tonsura.association import AssociationValue, _pair_counts


def somers_oracle(xs, ys):
    """Naive ordered-pair enumeration, coded independently of the library.

    Returns (C, D, TX, TY, S) or None when a denominator is zero.
    """
    n = len(xs)
    c = d = tx = ty = 0
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            dx = (xs[i] > xs[j]) - (xs[i] < xs[j])
            dy = (ys[i] > ys[j]) - (ys[i] < ys[j])
            if dx != 0 and dy != 0:
                if dx == dy:
                    c += 1
                else:
                    d += 1
            elif dx == 0 and dy != 0:
                tx += 1
            elif dy == 0 and dx != 0:
                ty += 1
    if c + d + tx == 0 or c + d + ty == 0:
        return None
    s = 0.5 * ((c - d) / (c + d + tx) + (c - d) / (c + d + ty))
    return c, d, tx, ty, s


def test_pearson_perfect_lines_are_exact():
    xs = np.random.default_rng(0).normal(size=100)
    assert pearson(PairedSeries(xs, xs)).value == 1.0
    assert pearson(PairedSeries(xs, -xs)).value == -1.0
    assert pearson(PairedSeries(xs, 2.0 * xs)).value == 1.0


def test_pearson_hand_computed_value():
    s = PairedSeries([0.0, 1.0, 2.0, 3.0], [0.0, 1.0, 2.0, 5.0])
    assert_allclose(pearson(s).value, 8.0 / math.sqrt(5.0 * 14.0), rtol=1e-15)


def test_pearson_uses_subset_means_only():
    s = PairedSeries([0.0, 1.0, 2.0, 100.0], [0.0, 1.0, 2.0, -50.0])
    sub = np.array([0, 1, 2])
    assert pearson(s, sub).value == 1.0
    assert pearson(s, sub).n_used == 3


def test_pearson_constant_marginal_raises():
    s = PairedSeries([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])
    with pytest.raises(ConstantSubset, match="x marginal"):
        pearson(s)
    s2 = PairedSeries([4.0, 2.0, 3.0, 1.0], [7.0, 7.0, 7.0, 5.0])
    with pytest.raises(ConstantSubset, match="y marginal"):
        pearson(s2, np.array([0, 1, 2]))


def test_pearson_agrees_with_scipy_on_generic_data():
    rng = np.random.default_rng(21)
    xs = rng.normal(size=200)
    ys = 0.3 * xs + rng.normal(size=200)
    ours = pearson(PairedSeries(xs, ys)).value
    ref = scipy.stats.pearsonr(xs, ys).statistic
    assert_allclose(ours, ref, rtol=1e-12)


def test_spearman_hand_computed_value():
    s = PairedSeries([1.0, 2.0, 3.0], [3.0, 1.0, 2.0])
    assert_allclose(spearman(s).value, -0.5, rtol=1e-15)


def test_spearman_strictly_monotone_transform_gives_one():
    xs = np.linspace(-2, 2, 25)
    s = PairedSeries(xs, np.exp(xs))
    assert spearman(s).value == 1.0


def test_spearman_recomputes_ranks_on_subset():
    # survivors' full-sample ranks are (1, 3, 5): recomputed they are (1, 2, 3)
    s = PairedSeries([1.0, 2.0, 3.0, 4.0, 5.0], [1.0, 9.0, 2.0, 8.0, 3.0])
    sub = np.array([0, 2, 4])
    assert spearman(s, sub).value == 1.0


def test_spearman_matches_scipy_with_ties():
    rng = np.random.default_rng(9)
    xs = rng.integers(0, 6, size=80).astype(float)
    ys = rng.integers(0, 6, size=80).astype(float)
    ours = spearman(PairedSeries(xs, ys)).value
    ref = scipy.stats.spearmanr(xs, ys).statistic
    assert_allclose(ours, ref, rtol=1e-12)


def test_somers_strict_concordance_is_one():
    s = PairedSeries([1.0, 2.0, 3.0, 4.0], [10.0, 20.0, 30.0, 40.0])
    assert somers_dba(s).value == 1.0
    assert somers_dba(PairedSeries([1.0, 2.0, 3.0], [5.0, 3.0, 1.0])).value == -1.0


def test_somers_tied_example_counts_and_value():
    # ordered pairs: one concordant unordered pair, one x-tie, one y-tie
    xs = [1.0, 1.0, 2.0]
    ys = [1.0, 2.0, 2.0]
    c, d, tx, ty = _pair_counts(np.array(xs), np.array(ys))
    assert (c, d, tx, ty) == (2, 0, 2, 2)
    oracle = somers_oracle(xs, ys)
    assert oracle[:4] == (2, 0, 2, 2)
    value = somers_dba(PairedSeries(xs, ys)).value
    assert_allclose(value, 0.5, rtol=1e-15)
    assert_allclose(value, oracle[4], rtol=1e-15)


def test_somers_symmetrization_matches_scipy_pair():
    rng = np.random.default_rng(17)
    xs = rng.integers(0, 4, size=40).astype(float)
    ys = rng.integers(0, 4, size=40).astype(float)
    ours = somers_dba(PairedSeries(xs, ys)).value
    d_yx = scipy.stats.somersd(xs, ys).statistic
    d_xy = scipy.stats.somersd(ys, xs).statistic
    assert_allclose(ours, 0.5 * (d_yx + d_xy), rtol=1e-12)


def test_somers_oracle_agreement_on_random_tied_data():
    rng = np.random.default_rng(4)
    for _ in range(25):
        n = int(rng.integers(2, 30))
        xs = rng.integers(0, 4, size=n).astype(float)
        ys = rng.integers(0, 4, size=n).astype(float)
        expected = somers_oracle(xs.tolist(), ys.tolist())
        if expected is None:
            with pytest.raises(DegenerateSubset):
                somers_dba(PairedSeries(xs, ys))
        else:
            assert_allclose(somers_dba(PairedSeries(xs, ys)).value, expected[4], rtol=1e-14)


def test_somers_exhaustive_small_sweep_n_le_4():
    values = (1.0, 2.0, 3.0)
    for n in (2, 3, 4):
        for xs in itertools.product(values, repeat=n):
            for ys in itertools.product(values, repeat=n):
                expected = somers_oracle(xs, ys)
                series = PairedSeries(xs, ys)
                if expected is None:
                    with pytest.raises(DegenerateSubset):
                        somers_dba(series)
                else:
                    got = somers_dba(series).value
                    assert got == pytest.approx(expected[4], rel=1e-14), (xs, ys)


def test_somers_degenerate_when_one_marginal_constant():
    s = PairedSeries([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])
    with pytest.raises(DegenerateSubset):
        somers_dba(s)


def test_somers_chunking_boundary_is_seamless():
    import tonsura.association as assoc

    rng = np.random.default_rng(2)
    n = assoc._SOMERS_CHUNK + 7
    xs = rng.integers(0, 10, size=n).astype(float)
    ys = rng.integers(0, 10, size=n).astype(float)
    big = _pair_counts(xs, ys)
    # same counts with a tiny chunk size
    old = assoc._SOMERS_CHUNK
    try:
        assoc._SOMERS_CHUNK = 13
        small = _pair_counts(xs, ys)
    finally:
        assoc._SOMERS_CHUNK = old
    assert big == small


def test_association_value_validates():
    with pytest.raises(ValueError):
        AssociationValue("kendall", 0.1, 10)
    with pytest.raises(ValueError):
        AssociationValue("pearson", 1.5, 10)
    with pytest.raises(ValueError):
        AssociationValue("pearson", 0.5, 1)


def test_tonsure_percent_and_confidence_flow_through():
    xs = np.arange(30, dtype=float)
    v = pearson(PairedSeries(xs, xs), np.arange(10), tonsure_percent=66.7)
    assert v.tonsure_percent == 66.7
    assert v.low_confidence


_finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.tuples(_finite, _finite), min_size=2, max_size=40))
def test_measures_are_symmetric_and_bounded(pairs):
    xs = np.array([p[0] for p in pairs])
    ys = np.array([p[1] for p in pairs])
    fwd = PairedSeries(xs, ys)
    rev = PairedSeries(ys, xs)
    for measure in (pearson, spearman, somers_dba):
        try:
            a = measure(fwd).value
        except (ConstantSubset, DegenerateSubset):
            continue
        b = measure(rev).value
        assert abs(a) <= 1.0
        assert a == pytest.approx(b, rel=1e-12, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(_finite, _finite), min_size=2, max_size=30))
def test_negating_y_negates_every_measure(pairs):
    xs = np.array([p[0] for p in pairs])
    ys = np.array([p[1] for p in pairs])
    for measure in (pearson, spearman, somers_dba):
        try:
            plain = measure(PairedSeries(xs, ys)).value
        except (ConstantSubset, DegenerateSubset):
            continue
        flipped = measure(PairedSeries(xs, -ys)).value
        assert flipped == pytest.approx(-plain, rel=1e-12, abs=1e-12)
