"""Classical comparison filters: standard, center-weighted, tri-state and
adaptive-window median. All of them smooth unconditionally (no detector),
and all use edge replication at the borders.
"""

from __future__ import annotations

import numpy as np

from .base import BaseImageFilter
from .imagecore import WINDOW_SIZES, sliding_windows
from .validation import check_image, check_odd


def smf(img, window=3):
    """Standard median filter."""
    img = check_image(img)
    if window not in WINDOW_SIZES:
        raise ValueError(f"window must be one of {WINDOW_SIZES}, got {window}")
    win = sliding_windows(img, window)
    return np.sort(win, axis=-1)[..., win.shape[-1] // 2].astype(np.uint8)


def cwmf(img, center_weight=3):
    """3x3 center-weighted median: the centre sample counts ``center_weight`` times."""
    img = check_image(img)
    w = check_odd(center_weight, "center_weight")
    win = sliding_windows(img, 3)
    extra = np.repeat(img[..., np.newaxis], w - 1, axis=-1)
    pool = np.concatenate([win, extra], axis=-1)
    return np.sort(pool, axis=-1)[..., pool.shape[-1] // 2].astype(np.uint8)


def tsmf(img, threshold=20, center_weight=3):
    """Tri-state median filter.

    With ``x`` the pixel, ``m`` the 3x3 median and ``c`` the center-weighted
    median: keep ``x`` if ``|x - m| <= T``, else ``c`` if ``|x - c| <= T``,
    else ``m``.
    """
    img = check_image(img)
    if threshold < 0:
        raise ValueError("threshold must be >= 0")
    x = img.astype(np.int32)
    m = smf(img, 3).astype(np.int32)
    c = cwmf(img, center_weight).astype(np.int32)
    out = np.where(np.abs(x - m) <= threshold, x, np.where(np.abs(x - c) <= threshold, c, m))
    return out.astype(np.uint8)


def adaptive_median(img, max_window=7):
    """Adaptive-window median filter.

    Each pixel starts at a 3x3 window. If the window median lies strictly
    between the window min and max, the pixel is kept when it too lies
    strictly inside, otherwise it takes the median. If not, the window grows
    by 2 up to ``max_window``, where the median is output.
    """
    img = check_image(img)
    s_max = check_odd(max_window, "max_window", minimum=3)
    out = img.copy()
    pending = np.flatnonzero(np.ones(img.size, dtype=bool))
    for size in range(3, s_max + 1, 2):
        win = sliding_windows(img, size).reshape(img.size, -1)[pending]
        lo = win.min(axis=1)
        hi = win.max(axis=1)
        med = np.sort(win, axis=1)[:, win.shape[1] // 2]
        centre = img.flat[pending]
        settled = (lo < med) & (med < hi)
        keep = settled & (lo < centre) & (centre < hi)
        result = np.where(keep, centre, med)
        if size == s_max:
            settled[:] = True
        out.flat[pending[settled]] = result[settled]
        pending = pending[~settled]
        if pending.size == 0:
            break
    return out


class MedianFilter(BaseImageFilter):
    def __init__(self, window=3):
        self.window = window

    def _validate_params(self):
        if self.window not in WINDOW_SIZES:
            raise ValueError(f"window must be one of {WINDOW_SIZES}, got {self.window}")

    def _filter_image(self, img):
        return smf(img, self.window)


class CenterWeightedMedianFilter(BaseImageFilter):
    def __init__(self, center_weight=3):
        self.center_weight = center_weight

    def _validate_params(self):
        check_odd(self.center_weight, "center_weight")

    def _filter_image(self, img):
        return cwmf(img, self.center_weight)


class TriStateMedianFilter(BaseImageFilter):
    def __init__(self, threshold=20, center_weight=3):
        self.threshold = threshold
        self.center_weight = center_weight

    def _validate_params(self):
        if self.threshold < 0:
            raise ValueError("threshold must be >= 0")
        check_odd(self.center_weight, "center_weight")

    def _filter_image(self, img):
        return tsmf(img, self.threshold, self.center_weight)


class AdaptiveMedianFilter(BaseImageFilter):
    def __init__(self, max_window=7):
        self.max_window = max_window

    def _validate_params(self):
        check_odd(self.max_window, "max_window", minimum=3)

    def _filter_image(self, img):
        return adaptive_median(img, self.max_window)
