"""Restoration quality metrics.

Sums of squares are accumulated exactly in int64 and divided once, so results
do not depend on summation order. Infinite ratios come back as ``math.inf``
and undefined ones (empty denominators) as ``math.nan``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .validation import DimensionMismatchError, check_image, check_same_shape

PEAK = 255
CSV_HEADER = ("filter", "density", "mse", "psnr_db", "snri_db", "pona_pct", "posp_pct")


def _as_int(*images, names):
    imgs = [check_image(im, n) for im, n in zip(images, names)]
    check_same_shape(*imgs, names=list(names))
    return [im.astype(np.int64) for im in imgs]


def _sq_err(a, b):
    d = a - b
    return int(np.sum(d * d))


def _ratio_db(num, den):
    if den == 0:
        return math.inf if num > 0 else math.nan
    if num == 0:
        return -math.inf
    return 10.0 * math.log10(num / den)


def mse(original, restored):
    s, r = _as_int(original, restored, names=("original", "restored"))
    return _sq_err(s, r) / s.size


def psnr(original, restored):
    s, r = _as_int(original, restored, names=("original", "restored"))
    err = _sq_err(s, r)
    if err == 0:
        return math.inf
    return 10.0 * math.log10(PEAK * PEAK * s.size / err)


def snr(original, other):
    """``10 log10(sum S^2 / sum (S - other)^2)``."""
    s, o = _as_int(original, other, names=("original", "other"))
    return _ratio_db(int(np.sum(s * s)), _sq_err(s, o))


def snri(original, noisy, restored):
    """SNR gain of ``restored`` over ``noisy``.

    NaN when the noisy image equals the original (its SNR is infinite), and
    +inf when the restoration is perfect.
    """
    s, x, r = _as_int(original, noisy, restored, names=("original", "noisy", "restored"))
    if _sq_err(s, x) == 0:
        return math.nan
    signal = int(np.sum(s * s))
    restored_db = _ratio_db(signal, _sq_err(s, r))
    noisy_db = _ratio_db(signal, _sq_err(s, x))
    return restored_db - noisy_db


def _mask(mask, shape):
    m = np.asarray(mask)
    if m.shape != shape:
        raise DimensionMismatchError(f"dimension mismatch: image={shape}, mask={m.shape}")
    if not np.isin(m, (0, 1)).all():
        raise ValueError("mask flags must be 0 or 1")
    return m.astype(bool)


def pona(original, noisy, restored, mask):
    """Percent of noisy (mask=1) pixels whose absolute error strictly decreased."""
    s, x, r = _as_int(original, noisy, restored, names=("original", "noisy", "restored"))
    m = _mask(mask, s.shape)
    total = int(m.sum())
    if total == 0:
        return math.nan
    improved = np.abs(r - s)[m] < np.abs(x - s)[m]
    return 100.0 * int(improved.sum()) / total


def posp(original, noisy, restored, mask):
    """Percent of clean (mask=0) pixels whose value changed."""
    s, _, r = _as_int(original, noisy, restored, names=("original", "noisy", "restored"))
    m = ~_mask(mask, s.shape)
    total = int(m.sum())
    if total == 0:
        return math.nan
    return 100.0 * int((r != s)[m].sum()) / total


@dataclass(frozen=True)
class MetricsReport:
    mse: float
    psnr_db: float
    snr_restored_db: float
    snr_noisy_db: float
    snri_db: float
    pona_pct: float
    posp_pct: float

    def csv_row(self, filter_name, density):
        return [
            filter_name,
            format_number(density),
            format_number(self.mse),
            format_number(self.psnr_db),
            format_number(self.snri_db),
            format_number(self.pona_pct),
            format_number(self.posp_pct),
        ]


def evaluate(original, noisy, restored, mask):
    """All metrics for one (original, noisy, restored) triple."""
    snr_r = snr(original, restored)
    snr_x = snr(original, noisy)
    return MetricsReport(
        mse=mse(original, restored),
        psnr_db=psnr(original, restored),
        snr_restored_db=snr_r,
        snr_noisy_db=snr_x,
        snri_db=snri(original, noisy, restored),
        pona_pct=pona(original, noisy, restored, mask),
        posp_pct=posp(original, noisy, restored, mask),
    )


def format_number(value):
    """Fixed 4-decimal, locale-independent; ``inf``/``-inf``/``na`` markers."""
    value = float(value)
    if math.isnan(value):
        return "na"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.4f}"
