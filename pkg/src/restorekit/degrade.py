"""Seeded artifact injectors and mask-based composition.

Every injector returns the degraded image together with a binary mask (1 =
corrupted). Corrupted pixels are written through :func:`apply_degradation`,
``out = img * (1 - mask) + mask * corrupt``, so pixels outside the mask are
bit-identical to the input.

All randomness comes from :class:`~restorekit.rng.Rng64`. The order in which
each injector consumes the stream is part of its contract (documented per
function) so that a seed means the same thing on every platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rng import Rng64
from .validation import check_image, check_same_shape

LINE_KINDS = ("drop", "strip", "band")


@dataclass(frozen=True)
class DegradationSpec:
    """A full degradation recipe.

    ``band`` is ``(start_row, width)`` or None; ``blotch_radius`` is the
    inclusive ``(min, max)`` semi-axis range in pixels.
    """

    impulse_density: float = 0.0
    drop_lines: int = 0
    strip_lines: int = 0
    band: tuple[int, int] | None = None
    blotches: int = 0
    blotch_radius: tuple[int, int] = (2, 6)
    gaussian_sigma: float | None = None
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.impulse_density <= 1.0:
            raise ValueError(f"impulse density must be in [0, 1], got {self.impulse_density}")
        for name in ("drop_lines", "strip_lines", "blotches"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if self.band is not None and (len(self.band) != 2 or self.band[1] < 2 or self.band[0] < 0):
            raise ValueError(f"band must be (start_row >= 0, width >= 2), got {self.band}")
        rmin, rmax = self.blotch_radius
        if rmin < 1 or rmax < rmin:
            raise ValueError(f"blotch radius range must satisfy 1 <= min <= max, got {self.blotch_radius}")
        if self.gaussian_sigma is not None and self.gaussian_sigma < 0:
            raise ValueError("gaussian sigma must be >= 0")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


def apply_degradation(img, mask, corrupt_values):
    """Literal evaluation of ``a = I (1 - b) + b c`` on uint8 images."""
    img = check_image(img, "img")
    corrupt_values = check_image(corrupt_values, "corrupt_values")
    mask = np.asarray(mask)
    check_same_shape(img, mask, corrupt_values, names=["img", "mask", "corrupt_values"])
    if not np.isin(mask, (0, 1)).all():
        raise ValueError("mask flags must be 0 or 1")
    b = mask.astype(np.int32)
    out = img.astype(np.int32) * (1 - b) + b * corrupt_values.astype(np.int32)
    return out.astype(np.uint8)


def _empty_mask(img):
    return np.zeros(img.shape, dtype=np.uint8)


def inject_impulse(img, p, rng):
    """Salt-and-pepper noise at density ``p``.

    Stream use: ``h*w`` uniforms (row-major) choose the corrupted pixels,
    then ``h*w`` further outputs supply one polarity bit per pixel (top bit
    set -> 255, else 0); bits of clean pixels are drawn and discarded.
    """
    img = check_image(img)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"impulse density must be in [0, 1], got {p}")
    n = img.size
    hit = rng.uniform_array(n) < p
    polarity = rng.bit_array(n)
    mask = hit.reshape(img.shape).astype(np.uint8)
    corrupt = (polarity * 255).astype(np.uint8).reshape(img.shape)
    return apply_degradation(img, mask, corrupt), mask


def _pick_rows(rng, height, count):
    # partial Fisher-Yates: one below() call per pick
    rows = list(range(height))
    for k in range(count):
        j = k + rng.below(height - k)
        rows[k], rows[j] = rows[j], rows[k]
    return rows[:count]


def inject_lines(img, kind, count_or_extent, rng):
    """Horizontal scanline artifacts.

    ``kind="drop"``: ``count`` distinct rows, each set to one constant
    (0 or 255). Stream: row picks, then one polarity bit per row in pick order.

    ``kind="strip"``: ``count`` distinct rows; sorted top to bottom they
    alternate between the two extremes, starting from one polarity bit.

    ``kind="band"``: ``count_or_extent = (start_row, width)``; the rows are
    fixed by the caller and one polarity bit picks the constant.
    """
    img = check_image(img)
    h, w = img.shape
    corrupt = np.empty_like(img)
    mask = _empty_mask(img)
    if kind == "band":
        start, width = count_or_extent
        if width < 2 or start < 0:
            raise ValueError(f"band must be (start_row >= 0, width >= 2), got {count_or_extent}")
        if start + width > h:
            raise ValueError(f"band rows {start}..{start + width - 1} exceed image height {h}")
        corrupt[:] = 255 if rng.bit() else 0
        mask[start : start + width] = 1
        return apply_degradation(img, mask, corrupt), mask

    if kind not in LINE_KINDS:
        raise ValueError(f"unknown line kind {kind!r}; expected one of {LINE_KINDS}")
    count = int(count_or_extent)
    if not 0 <= count <= h:
        raise ValueError(f"cannot place {count} lines in an image of height {h}")
    rows = _pick_rows(rng, h, count)
    if kind == "drop":
        for row in rows:
            corrupt[row] = 255 if rng.bit() else 0
            mask[row] = 1
    else:
        value = 255 if (count and rng.bit()) else 0
        for row in sorted(rows):
            corrupt[row] = value
            mask[row] = 1
            value = 255 - value
    return apply_degradation(img, mask, corrupt), mask


def ellipse_offsets(rx, ry):
    """Integer offsets ``(dy, dx)`` with ``dx^2/rx^2 + dy^2/ry^2 <= 1``."""
    dy, dx = np.mgrid[-ry : ry + 1, -rx : rx + 1]
    inside = dx * dx * ry * ry + dy * dy * rx * rx <= rx * rx * ry * ry
    return dy[inside], dx[inside]


def inject_blotches(img, count, radius_range, rng):
    """Filled ellipses of constant extreme intensity, clipped at the borders.

    Stream per blotch: centre row, centre column, vertical semi-axis,
    horizontal semi-axis (each via ``below``), then one polarity bit.
    """
    img = check_image(img)
    rmin, rmax = radius_range
    if count < 0:
        raise ValueError("blotch count must be >= 0")
    if rmin < 1 or rmax < rmin:
        raise ValueError(f"radius range must satisfy 1 <= min <= max, got {radius_range}")
    h, w = img.shape
    corrupt = np.zeros_like(img)
    mask = _empty_mask(img)
    for _ in range(count):
        cy = rng.below(h)
        cx = rng.below(w)
        ry = rmin + rng.below(rmax - rmin + 1)
        rx = rmin + rng.below(rmax - rmin + 1)
        value = 255 if rng.bit() else 0
        dy, dx = ellipse_offsets(rx, ry)
        yy, xx = cy + dy, cx + dx
        keep = (yy >= 0) & (yy < h) & (xx >= 0) & (xx < w)
        corrupt[yy[keep], xx[keep]] = value
        mask[yy[keep], xx[keep]] = 1
    return apply_degradation(img, mask, corrupt), mask


def inject_gaussian(img, sigma, rng):
    """Additive zero-mean Gaussian noise, rounded half-up and clamped.

    Box-Muller on pairs of uniforms: per pixel ``u1`` then ``u2`` (interleaved
    row-major), ``n = sqrt(-2 ln(1 - u1)) cos(2 pi u2)``.
    """
    img = check_image(img)
    if sigma < 0:
        raise ValueError("sigma must be >= 0")
    if sigma == 0:
        return img.copy()
    u = rng.uniform_array(2 * img.size).reshape(-1, 2)
    n = np.sqrt(-2.0 * np.log1p(-u[:, 0])) * np.cos(2.0 * math.pi * u[:, 1])
    noisy = img.astype(np.float64) + np.floor(sigma * n.reshape(img.shape) + 0.5)
    return np.clip(noisy, 0, 255).astype(np.uint8)


def degrade(img, spec):
    """Apply a :class:`DegradationSpec` in the fixed order Gaussian, impulse,
    drop lines, strip lines, band, blotches, all from one ``Rng64(spec.seed)``.

    Returns ``(degraded, mask)`` with the injector masks OR-combined. The
    Gaussian stage contributes nothing to the mask.
    """
    img = check_image(img)
    rng = Rng64(spec.seed)
    out = img
    mask = _empty_mask(img)
    if spec.gaussian_sigma:
        out = inject_gaussian(out, spec.gaussian_sigma, rng)
    if spec.impulse_density > 0:
        out, m = inject_impulse(out, spec.impulse_density, rng)
        mask |= m
    if spec.drop_lines:
        out, m = inject_lines(out, "drop", spec.drop_lines, rng)
        mask |= m
    if spec.strip_lines:
        out, m = inject_lines(out, "strip", spec.strip_lines, rng)
        mask |= m
    if spec.band is not None:
        out, m = inject_lines(out, "band", spec.band, rng)
        mask |= m
    if spec.blotches:
        out, m = inject_blotches(out, spec.blotches, spec.blotch_radius, rng)
        mask |= m
    return out, mask


def mask_to_image(mask):
    """Mask as a PGM-ready image: 255 where corrupted, 0 elsewhere."""
    return (np.asarray(mask, dtype=np.uint8) * 255).astype(np.uint8)


def mask_from_image(img):
    img = check_image(img, "mask image")
    if not np.isin(img, (0, 255)).all():
        raise ValueError("mask image must contain only 0 and 255")
    return (img == 255).astype(np.uint8)
