"""Input validation helpers shared by every filter and metric.

Images are ``numpy.uint8`` arrays of shape ``(height, width)``. The helpers
below accept anything array-like holding integers in ``[0, 255]`` and hand
back a C-contiguous uint8 array, so the rest of the package can assume that
layout.
"""

from __future__ import annotations

import numpy as np


class DimensionMismatchError(ValueError):
    """Two images that must share a shape do not."""


def check_image(img, name="image"):
    """Validate a single grayscale image and return it as uint8.

    Parameters
    ----------
    img : array_like
        2-D array of integer samples in ``[0, 255]``.
    name : str
        Used in error messages.

    Returns
    -------
    numpy.ndarray
        C-contiguous ``uint8`` array of shape ``(height, width)``. The input
        is returned as-is when it already satisfies that contract.
    """
    arr = np.asarray(img)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-D (height, width), got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must have positive width and height, got {arr.shape}")
    if arr.dtype == np.uint8:
        return np.ascontiguousarray(arr)
    if arr.dtype.kind == "b" or arr.dtype.kind not in "iuf":
        raise TypeError(f"{name} must hold integer samples, got dtype {arr.dtype}")
    if arr.dtype.kind == "f" and not np.all(np.equal(np.mod(arr, 1), 0)):
        raise ValueError(f"{name} holds non-integer samples")
    if arr.min() < 0 or arr.max() > 255:
        raise ValueError(f"{name} samples must lie in [0, 255]")
    return np.ascontiguousarray(arr, dtype=np.uint8)


def check_image_stack(X, name="X"):
    """Validate a single image or a stack of equally sized images.

    Returns ``(stack, was_single)`` where ``stack`` has shape
    ``(n_images, height, width)``.
    """
    arr = np.asarray(X)
    if arr.ndim == 2:
        return check_image(arr, name)[np.newaxis], True
    if arr.ndim == 3:
        if arr.shape[0] < 1:
            raise ValueError(f"{name} holds no images")
        return np.stack([check_image(a, f"{name}[{k}]") for k, a in enumerate(arr)]), False
    raise ValueError(f"{name} must be 2-D or 3-D, got shape {arr.shape}")


def check_same_shape(*images, names=None):
    """Raise :class:`DimensionMismatchError` unless all images share a shape."""
    shapes = [np.shape(im) for im in images]
    if any(s != shapes[0] for s in shapes[1:]):
        labels = names or [f"arg{k}" for k in range(len(images))]
        desc = ", ".join(f"{n}={s}" for n, s in zip(labels, shapes))
        raise DimensionMismatchError(f"dimension mismatch: {desc}")


def check_odd(value, name, minimum=1):
    if int(value) != value or value < minimum or value % 2 == 0:
        raise ValueError(f"{name} must be an odd integer >= {minimum}, got {value!r}")
    return int(value)
