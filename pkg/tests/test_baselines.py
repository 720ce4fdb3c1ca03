import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from restorekit.baselines import (
    AdaptiveMedianFilter,
    CenterWeightedMedianFilter,
    MedianFilter,
    TriStateMedianFilter,
    adaptive_median,
    cwmf,
    smf,
    tsmf,
)


def window(img, y, x, size):
    h, w = img.shape
    r = size // 2
    return [int(img[min(max(y + a, 0), h - 1), min(max(x + b, 0), w - 1)])
            for a in range(-r, r + 1) for b in range(-r, r + 1)]


def med(values):
    return sorted(values)[len(values) // 2]


def brute_smf(img, size):
    return np.array([[med(window(img, y, x, size)) for x in range(img.shape[1])]
                     for y in range(img.shape[0])], np.uint8)


def brute_cwmf(img, w):
    return np.array([[med(window(img, y, x, 3) + [int(img[y, x])] * (w - 1)) for x in range(img.shape[1])]
                     for y in range(img.shape[0])], np.uint8)


def brute_amf(img, s_max):
    out = np.empty_like(img)
    for y in range(img.shape[0]):
        for x in range(img.shape[1]):
            z = int(img[y, x])
            size = 3
            while True:
                vals = window(img, y, x, size)
                lo, hi, m = min(vals), max(vals), med(vals)
                if lo < m < hi:
                    out[y, x] = z if lo < z < hi else m
                    break
                if size + 2 > s_max:
                    out[y, x] = m
                    break
                size += 2
    return out


images = arrays(np.uint8, st.tuples(st.integers(1, 12), st.integers(1, 12)), elements=st.integers(0, 255))


@pytest.fixture
def texture():
    return np.random.default_rng(17).integers(0, 256, (15, 13)).astype(np.uint8)


class TestSMF:
    def test_constant(self):
        img = np.full((6, 6), 77, np.uint8)
        assert np.array_equal(smf(img, 3), img)
        assert np.array_equal(smf(img, 5), img)

    def test_single_impulse(self):
        img = np.full((5, 5), 100, np.uint8)
        img[2, 2] = 255
        assert smf(img, 3)[2, 2] == 100

    def test_step_edge_preserved(self):
        img = np.zeros((6, 6), np.uint8)
        img[:, 3:] = 255
        assert np.array_equal(smf(img, 3), brute_smf(img, 3))
        assert np.array_equal(smf(img, 3), img)

    @pytest.mark.parametrize("size", [3, 5])
    def test_matches_brute_force(self, texture, size):
        assert np.array_equal(smf(texture, size), brute_smf(texture, size))

    def test_bad_window(self, texture):
        with pytest.raises(ValueError):
            smf(texture, 7)


class TestCWMF:
    def test_weight_one_is_smf(self, texture):
        assert np.array_equal(cwmf(texture, 1), smf(texture, 3))

    def test_weight_nine_is_identity(self, texture):
        assert np.array_equal(cwmf(texture, 9), texture)

    def test_weight_three_impulse(self):
        img = np.full((3, 3), 100, np.uint8)
        img[1, 1] = 255
        # sorted multiset {100 x 8, 255 x 3}: the 6th of 11 is 100
        assert sorted([100] * 8 + [255] * 3)[5] == 100
        assert cwmf(img, 3)[1, 1] == 100

    @pytest.mark.parametrize("w", [3, 5, 7])
    def test_matches_brute_force(self, texture, w):
        assert np.array_equal(cwmf(texture, w), brute_cwmf(texture, w))

    def test_even_weight(self, texture):
        with pytest.raises(ValueError):
            cwmf(texture, 2)


class TestTSMF:
    def test_large_threshold_identity(self, texture):
        assert np.array_equal(tsmf(texture, 10**6), texture)

    def test_zero_threshold_impulse(self):
        img = np.full((5, 5), 100, np.uint8)
        img[2, 2] = 255
        assert tsmf(img, 0)[2, 2] == 100

    def test_small_deviation_kept(self):
        img = np.full((5, 5), 100, np.uint8)
        img[2, 2] = 105
        assert tsmf(img, 20)[2, 2] == 105

    def test_matches_brute_force(self, texture):
        m = brute_smf(texture, 3).astype(int)
        c = brute_cwmf(texture, 3).astype(int)
        x = texture.astype(int)
        T = 20
        expected = np.where(np.abs(x - m) <= T, x, np.where(np.abs(x - c) <= T, c, m))
        assert np.array_equal(tsmf(texture, T), expected.astype(np.uint8))

    def test_zero_threshold_is_median_where_pixel_differs(self, texture):
        out = tsmf(texture, 0)
        m = smf(texture, 3)
        c = cwmf(texture, 3)
        differs = texture != m
        # with T=0 the centre-weighted median is taken only when it equals x
        expected = np.where(c == texture, texture, m)
        assert np.array_equal(out[differs], expected[differs])
        assert np.array_equal(out[~differs], texture[~differs])


class TestAdaptiveMedian:
    def test_clean_pixel_unchanged(self):
        img = np.array([[10, 20, 30], [40, 50, 60], [70, 80, 90]], np.uint8)
        assert adaptive_median(img, 7)[1, 1] == 50

    def test_isolated_impulse(self):
        img = np.full((7, 7), 100, np.uint8)
        img[3, 3] = 0
        img[0, 0] = 120  # gives the windows a spread
        img[6, 6] = 80
        out = adaptive_median(img, 7)
        assert out[3, 3] == 100

    def test_window_grows_to_max(self):
        # inner 5x5 all zero inside a 100 field: the 3x3, 5x5 and 7x7 medians
        # sit at an extreme, so the decision is the final window median
        img = np.full((9, 9), 100, np.uint8)
        img[2:7, 2:7] = 0
        assert adaptive_median(img, 7)[4, 4] == 0  # 7x7: 25 zeros of 49
        assert adaptive_median(img, 9)[4, 4] == 100  # 9x9: 25 zeros of 81

    @pytest.mark.parametrize("s_max", [3, 5, 7])
    def test_matches_brute_force(self, texture, s_max):
        img = texture.copy()
        img[np.random.default_rng(0).random(img.shape) < 0.4] = 255
        assert np.array_equal(adaptive_median(img, s_max), brute_amf(img, s_max))

    def test_bad_window(self, texture):
        with pytest.raises(ValueError):
            adaptive_median(texture, 4)
        with pytest.raises(ValueError):
            adaptive_median(texture, 1)


@settings(max_examples=50, deadline=None)
@given(images)
def test_cwmf_one_equals_smf(img):
    assert np.array_equal(cwmf(img, 1), smf(img, 3))


@settings(max_examples=50, deadline=None)
@given(images)
def test_tsmf_infinite_threshold_identity(img):
    assert np.array_equal(tsmf(img, 256), img)


@settings(max_examples=50, deadline=None)
@given(images)
def test_amf_keeps_pixels_strictly_inside_3x3_range(img):
    out = adaptive_median(img, 7)
    for y in range(img.shape[0]):
        for x in range(img.shape[1]):
            vals = window(img, y, x, 3)
            lo, hi, m = min(vals), max(vals), med(vals)
            if lo < m < hi and lo < img[y, x] < hi:
                assert out[y, x] == img[y, x]


@settings(max_examples=30, deadline=None)
@given(images)
def test_all_baselines_deterministic_uint8(img):
    for f in (lambda a: smf(a, 3), lambda a: smf(a, 5), lambda a: cwmf(a, 3), lambda a: tsmf(a, 20),
              lambda a: adaptive_median(a, 7)):
        a, b = f(img), f(img.copy())
        assert a.dtype == np.uint8 and a.shape == img.shape
        assert np.array_equal(a, b)


def test_estimators(texture):
    assert np.array_equal(MedianFilter(5).fit_transform(texture), smf(texture, 5))
    assert np.array_equal(CenterWeightedMedianFilter(5).fit_transform(texture), cwmf(texture, 5))
    assert np.array_equal(TriStateMedianFilter(10).fit_transform(texture), tsmf(texture, 10))
    assert np.array_equal(AdaptiveMedianFilter(5).fit_transform(texture), adaptive_median(texture, 5))
    with pytest.raises(ValueError):
        MedianFilter(4).transform(texture)
