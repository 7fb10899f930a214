import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from tonsura import (
    ConstantSeries,
    PairedSeries,
    compute_centroid,
    compute_ranks,
)


def test_paired_series_holds_float64_copies():
    s = PairedSeries([1, 2, 3], [4, 5, 6])
    assert s.n == 3
    assert s.xs.dtype == np.float64
    assert_array_equal(s.xs, [1.0, 2.0, 3.0])


def test_paired_series_is_immutable():
    s = PairedSeries([1.0, 2.0], [3.0, 4.0])
    with pytest.raises(ValueError):
        s.xs[0] = 9.0
    src = np.array([1.0, 2.0])
    s2 = PairedSeries(src, [3.0, 4.0])
    src[0] = 99.0
    assert s2.xs[0] == 1.0


@pytest.mark.parametrize(
    "xs,ys",
    [
        ([1.0], [2.0]),
        ([1.0, 2.0], [3.0]),
        ([1.0, np.nan], [3.0, 4.0]),
        ([1.0, 2.0], [np.inf, 4.0]),
        ([[1.0, 2.0]], [[3.0, 4.0]]),
    ],
)
def test_paired_series_rejects_bad_input(xs, ys):
    with pytest.raises(ValueError):
        PairedSeries(xs, ys)


def test_take_preserves_labels_and_order():
    s = PairedSeries([10, 20, 30, 40], [1, 2, 3, 4], labels=("a", "b"))
    sub = s.take(np.array([3, 0]))
    assert sub.labels == ("a", "b")
    assert_array_equal(sub.xs, [40.0, 10.0])
    assert_array_equal(sub.ys, [4.0, 1.0])


def test_midranks_untied_are_permutation():
    s = PairedSeries([3.0, 1.0, 2.0], [10.0, 30.0, 20.0])
    r = compute_ranks(s)
    assert_array_equal(r.ranks_x, [3.0, 1.0, 2.0])
    assert_array_equal(r.ranks_y, [1.0, 3.0, 2.0])
    assert not r.has_ties


def test_midranks_average_tied_groups():
    s = PairedSeries([10.0, 20.0, 20.0, 30.0], [5.0, 5.0, 5.0, 1.0])
    r = compute_ranks(s)
    assert_array_equal(r.ranks_x, [1.0, 2.5, 2.5, 4.0])
    assert_array_equal(r.ranks_y, [3.0, 3.0, 3.0, 1.0])
    assert r.tie_groups_x == (2,)
    assert r.tie_groups_y == (3,)
    assert r.has_ties


def test_rank_sum_is_conserved():
    rng = np.random.default_rng(5)
    xs = rng.integers(0, 5, size=40).astype(float)
    ys = rng.normal(size=40)
    r = compute_ranks(PairedSeries(xs, ys))
    n = 40
    assert r.ranks_x.sum() == n * (n + 1) / 2
    assert r.ranks_y.sum() == n * (n + 1) / 2


def test_mean_centroid_carries_sample_scales():
    s = PairedSeries([1.0, 2.0, 3.0], [10.0, 20.0, 60.0])
    c = compute_centroid(s)
    assert c.mode == "mean"
    assert_allclose(c.cx, 2.0)
    assert_allclose(c.cy, 30.0)
    assert_allclose(c.sx, np.std([1.0, 2.0, 3.0], ddof=1))
    assert_allclose(c.sy, np.std([10.0, 20.0, 60.0], ddof=1))


def test_median_centroid_has_no_scales():
    s = PairedSeries([1.0, 2.0, 9.0], [7.0, 5.0, 3.0])
    c = compute_centroid(s, mode="median")
    assert c.mode == "median"
    assert c.cx == 2.0
    assert c.cy == 5.0
    assert c.sx is None and c.sy is None


def test_constant_marginal_is_degenerate_and_named():
    s = PairedSeries([5.0, 5.0, 5.0], [1.0, 2.0, 3.0], labels=("flat", "ok"))
    with pytest.raises(ConstantSeries, match="flat"):
        compute_centroid(s)


def test_unknown_centroid_mode_rejected():
    s = PairedSeries([1.0, 2.0], [3.0, 4.0])
    with pytest.raises(ValueError):
        compute_centroid(s, mode="mode")
