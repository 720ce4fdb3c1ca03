"""Centred 2-D DFT, low-pass / high-emphasis transfer functions and
homomorphic enhancement.

The spectrum is centred by modulating the input with ``(-1)**(x + y)`` before
transforming, so frequency index ``(u, v)`` sits at distance
``hypot(u - W/2, v - H/2)`` from the origin of the frequency plane.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .base import BaseImageFilter
from .validation import check_image

TRANSFER_KINDS = ("ideal-lowpass", "butterworth-lowpass", "homomorphic-emphasis")


@dataclass(frozen=True)
class TransferSpec:
    kind: str
    cutoff: float
    order: int = 2
    gamma_low: float = 0.5
    gamma_high: float = 1.5
    sharpness: float = 1.0

    def __post_init__(self):
        if self.kind not in TRANSFER_KINDS:
            raise ValueError(f"unknown transfer kind {self.kind!r}; expected one of {TRANSFER_KINDS}")
        if self.cutoff <= 0:
            raise ValueError(f"cutoff must be > 0 for {self.kind}, got {self.cutoff}")
        if self.kind == "butterworth-lowpass" and (int(self.order) != self.order or self.order < 1):
            raise ValueError("Butterworth order must be a positive integer")
        if self.kind == "homomorphic-emphasis":
            if self.sharpness <= 0:
                raise ValueError("sharpness must be > 0")
            # a flat transfer (gamma_low == gamma_high) is allowed as the identity check
            flat = self.gamma_low == self.gamma_high and self.gamma_low > 0
            if not (flat or 0 < self.gamma_low < 1 < self.gamma_high):
                raise ValueError("homomorphic emphasis needs 0 < gamma_low < 1 < gamma_high")


def homomorphic(cutoff, gamma_low=0.5, gamma_high=1.5, sharpness=1.0):
    return TransferSpec("homomorphic-emphasis", cutoff, gamma_low=gamma_low,
                        gamma_high=gamma_high, sharpness=sharpness)


def _checker(shape):
    y, x = np.indices(shape)
    return np.where((x + y) % 2 == 0, 1.0, -1.0)


def dft2(f):
    """``F(u, v) = sum f(x, y) (-1)^(x+y) exp(-2 pi i (u x / W + v y / H))``.

    Arrays are indexed ``[row, column]``, i.e. ``F[v, u]``.
    """
    f = np.asarray(f, dtype=np.float64)
    if f.ndim != 2:
        raise ValueError("dft2 expects a 2-D array")
    return np.fft.fft2(f * _checker(f.shape))


def idft2(spec):
    """Inverse of :func:`dft2`; returns the real part."""
    spec = np.asarray(spec, dtype=np.complex128)
    return np.real(np.fft.ifft2(spec)) * _checker(spec.shape)


def frequency_distance(shape):
    """Distance of every centred frequency index from the origin."""
    h, w = shape
    v, u = np.indices(shape, dtype=np.float64)
    return np.hypot(u - w / 2.0, v - h / 2.0)


def transfer_function(shape, t):
    d = frequency_distance(shape)
    if t.kind == "homomorphic-emphasis":
        return (t.gamma_high - t.gamma_low) * (1.0 - np.exp(-t.sharpness * d**2 / t.cutoff**2)) + t.gamma_low
    if t.kind == "ideal-lowpass":
        return (d <= t.cutoff).astype(np.float64)
    return 1.0 / (1.0 + (d / t.cutoff) ** (2 * t.order))


def transfer(spec, t):
    """Multiply a centred spectrum pointwise by the transfer function of ``t``."""
    spec = np.asarray(spec)
    return spec * transfer_function(spec.shape, t)


def rescale_to_8bit(g):
    """Scale so the maximum maps to 255 (zero stays zero), clip negatives,
    round half-up."""
    g = np.asarray(g, dtype=np.float64)
    peak = g.max()
    if peak > 0:
        g = g * (255.0 / peak)
    return np.clip(np.floor(g + 0.5), 0, 255).astype(np.uint8)


def homomorphic_enhance(img, t):
    """``ln(1 + f)`` -> dft2 -> transfer -> idft2 -> ``exp(.) - 1`` -> 8 bit."""
    img = check_image(img)
    if t.kind != "homomorphic-emphasis":
        raise ValueError("homomorphic_enhance needs a homomorphic-emphasis transfer")
    z = np.log1p(img.astype(np.float64))
    s = idft2(transfer(dft2(z), t))
    return rescale_to_8bit(np.expm1(s))


class HomomorphicFilter(BaseImageFilter):
    def __init__(self, cutoff=30.0, gamma_low=0.5, gamma_high=1.5, sharpness=1.0):
        self.cutoff = cutoff
        self.gamma_low = gamma_low
        self.gamma_high = gamma_high
        self.sharpness = sharpness

    def _spec(self):
        return homomorphic(self.cutoff, self.gamma_low, self.gamma_high, self.sharpness)

    def _validate_params(self):
        self._spec()

    def _filter_image(self, img):
        return homomorphic_enhance(img, self._spec())
