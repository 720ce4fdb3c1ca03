"""Decision-based adaptive median/mean restoration.

Only pixels whose value equals one of the two detector thresholds (0 and 255
by default) are treated as corrupted and replaced; every other pixel is left
bit-identical. For a corrupted pixel, ``n`` is the number of corrupted
samples in its 5x5 edge-replicated neighbourhood and selects the estimator:

==========================  ==============================================
``n <= case2_max``          median of the 3x3 window (case 2)
``case2_max < n <= case3_max``  median of the 5x5 window (case 3)
``n > case3_max``           median of the 3x3 window (case 4)
==========================  ==============================================

Medians are taken over all window samples, corrupted ones included. When
the chosen median is itself a corrupted value, the mean of the clean samples
in the same window replaces it. If a 3x3 window has no clean sample at all
the same median-then-mean rule runs on the 5x5 window, and if that is also
entirely corrupted the pixel copies its already-restored west neighbour
(128 in the first column).

With ``recursive=True`` (default) the scan is in-place in raster order, so
restored pixels feed later windows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .base import BaseImageFilter
from .imagecore import extract_window
from .validation import check_image

SOURCE_NAMES = ("none", "median3", "median5", "mean-uncorrupted", "fallback")
SRC_NONE, SRC_MEDIAN3, SRC_MEDIAN5, SRC_MEAN, SRC_FALLBACK = range(5)
FALLBACK_VALUE = 128


@dataclass(frozen=True)
class RestoreConfig:
    low_threshold: int = 0
    high_threshold: int = 255
    case2_max: int = 4
    case3_max: int = 12
    recursive: bool = True

    def __post_init__(self):
        if not 0 <= self.low_threshold < self.high_threshold <= 255:
            raise ValueError("thresholds must satisfy 0 <= low < high <= 255")
        if not 0 <= self.case2_max < self.case3_max < 25:
            raise ValueError("case bounds must satisfy 0 <= case2_max < case3_max < 25")


@dataclass(frozen=True)
class CaseTrace:
    """Which case fired and which estimator produced each replaced pixel.

    ``cases`` holds 1-4 for pixels detected as corrupted and 0 for clean
    pixels; ``sources`` indexes :data:`SOURCE_NAMES`.
    """

    cases: np.ndarray
    sources: np.ndarray

    def records(self):
        """``(row, col, case, source_name)`` for every corrupted pixel, raster order."""
        rows, cols = np.nonzero(self.cases)
        return [
            (int(r), int(c), int(self.cases[r, c]), SOURCE_NAMES[self.sources[r, c]])
            for r, c in zip(rows, cols)
        ]

    def counts(self):
        counts = {f"case{k}": int(np.count_nonzero(self.cases == k)) for k in (2, 3, 4)}
        counts = {"case1": int(np.count_nonzero(self.cases == 0)), **counts}
        counts["fallback"] = int(np.count_nonzero(self.sources == SRC_FALLBACK))
        return counts


def is_corrupted(v, cfg=RestoreConfig()):
    return v == cfg.low_threshold or v == cfg.high_threshold


def count_corrupted(img, x, y, cfg=RestoreConfig()):
    """Corrupted samples in the 5x5 replicated window centred on column x, row y."""
    win = extract_window(img, x, y, 5)
    return int(np.count_nonzero((win == cfg.low_threshold) | (win == cfg.high_threshold)))


def exact_median(values):
    values = np.asarray(values).ravel()
    if values.size == 0 or values.size % 2 == 0:
        raise ValueError(f"median needs an odd, nonzero number of samples, got {values.size}")
    return int(np.sort(values)[values.size // 2])


def shear_sort_median(win):
    """Centre of the window after sorting rows, then columns, then the
    anti-diagonal (top-right to bottom-left), all ascending.

    Exact for 3x3 windows; an approximation of the median for 5x5.
    """
    a = np.sort(np.array(win, dtype=np.int64), axis=1)
    a = np.sort(a, axis=0)
    size = a.shape[0]
    if a.shape != (size, size) or size not in (3, 5):
        raise ValueError(f"window must be 3x3 or 5x5, got {a.shape}")
    idx = np.arange(size)
    a[idx, size - 1 - idx] = np.sort(a[idx, size - 1 - idx])
    return int(a[size // 2, size // 2])


def mean_uncorrupted(win, cfg=RestoreConfig()):
    """Mean of the clean samples rounded half-up, or None if there are none."""
    v = np.asarray(win, dtype=np.int64).ravel()
    clean = v[(v != cfg.low_threshold) & (v != cfg.high_threshold)]
    if clean.size == 0:
        return None
    k = clean.size
    return int((2 * int(clean.sum()) + k) // (2 * k))


@numba.njit(cache=True)
def _insertion_median(buf, k):
    for i in range(1, k):
        v = buf[i]
        j = i - 1
        while j >= 0 and buf[j] > v:
            buf[j + 1] = buf[j]
            j -= 1
        buf[j + 1] = v
    return buf[k // 2]


@numba.njit(cache=True)
def _gather(src, i, j, r, buf):
    h, w = src.shape
    k = 0
    for di in range(-r, r + 1):
        ii = min(max(i + di, 0), h - 1)
        for dj in range(-r, r + 1):
            jj = min(max(j + dj, 0), w - 1)
            buf[k] = src[ii, jj]
            k += 1
    return k


@numba.njit(cache=True)
def _median_then_mean(vals, k, scratch, lo, hi):
    """Returns (value, source) with source 0 = median, 1 = mean, -1 = none."""
    total = 0
    clean = 0
    for t in range(k):
        v = vals[t]
        scratch[t] = v
        if v != lo and v != hi:
            total += v
            clean += 1
    med = _insertion_median(scratch, k)
    if med != lo and med != hi:
        return med, 0
    if clean > 0:
        return (2 * total + clean) // (2 * clean), 1
    return -1, -1


@numba.njit(cache=True)
def _ndb_kernel(src, out, recursive, lo, hi, case2_max, case3_max, cases, sources):
    h, w = src.shape
    buf = out if recursive else src
    w3 = np.empty(9, np.int64)
    w5 = np.empty(25, np.int64)
    scratch = np.empty(25, np.int64)
    for i in range(h):
        for j in range(w):
            p = src[i, j]
            if p != lo and p != hi:
                continue
            _gather(buf, i, j, 2, w5)
            n = 0
            for t in range(25):
                if w5[t] == lo or w5[t] == hi:
                    n += 1
            _gather(buf, i, j, 1, w3)
            if n <= case2_max:
                case = 2
            elif n <= case3_max:
                case = 3
            else:
                case = 4
            value = -1
            src_code = 0
            if case != 3:
                value, kind = _median_then_mean(w3, 9, scratch, lo, hi)
                if kind == 0:
                    src_code = 1
                elif kind == 1:
                    src_code = 3
            if value < 0:
                value, kind = _median_then_mean(w5, 25, scratch, lo, hi)
                if kind == 0:
                    src_code = 2
                elif kind == 1:
                    src_code = 3
            if value < 0:
                src_code = 4
                value = out[i, j - 1] if j > 0 else 128
            out[i, j] = value
            cases[i, j] = case
            sources[i, j] = src_code


def ndb_restore(img, cfg=RestoreConfig()):
    """Restore ``img``; returns ``(restored, CaseTrace)``."""
    img = check_image(img)
    out = img.copy()
    cases = np.zeros(img.shape, dtype=np.int8)
    sources = np.zeros(img.shape, dtype=np.int8)
    _ndb_kernel(
        img,
        out,
        bool(cfg.recursive),
        int(cfg.low_threshold),
        int(cfg.high_threshold),
        int(cfg.case2_max),
        int(cfg.case3_max),
        cases,
        sources,
    )
    return out, CaseTrace(cases, sources)


class DecisionMedianFilter(BaseImageFilter):
    """Estimator wrapper around :func:`ndb_restore`.

    Examples
    --------
    >>> import numpy as np
    >>> img = np.full((5, 5), 100, dtype=np.uint8)
    >>> img[2, 2] = 255
    >>> int(DecisionMedianFilter().fit_transform(img)[2, 2])
    100
    """

    def __init__(self, low_threshold=0, high_threshold=255, case2_max=4, case3_max=12, recursive=True):
        self.low_threshold = low_threshold
        self.high_threshold = high_threshold
        self.case2_max = case2_max
        self.case3_max = case3_max
        self.recursive = recursive

    def _config(self):
        return RestoreConfig(
            self.low_threshold, self.high_threshold, self.case2_max, self.case3_max, self.recursive
        )

    def _validate_params(self):
        self._config()

    def _filter_image(self, img):
        return ndb_restore(img, self._config())[0]
