"""Grayscale image I/O (binary PGM) and windowed access with edge replication."""

from __future__ import annotations

import os

import numpy as np

from .validation import check_image

WINDOW_SIZES = (3, 5)
_WHITESPACE = b" \t\n\r\v\f"


class PGMError(ValueError):
    """Base class for binary PGM decoding failures."""


class BadMagicError(PGMError):
    pass


class BadHeaderError(PGMError):
    pass


class BadDimensionsError(PGMError):
    pass


class BadMaxvalError(PGMError):
    pass


class TruncatedPayloadError(PGMError):
    pass


def _next_token(data, pos):
    """Return ``(token, end)`` for the next header token, skipping comments."""
    n = len(data)
    while pos < n:
        c = data[pos : pos + 1]
        if c in _WHITESPACE:
            pos += 1
        elif c == b"#":
            while pos < n and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
        else:
            break
    start = pos
    while pos < n and data[pos : pos + 1] not in _WHITESPACE and data[pos : pos + 1] != b"#":
        pos += 1
    if start == pos:
        raise BadHeaderError("PGM header ended early")
    return data[start:pos], pos


def _header_int(token, field):
    try:
        return int(token.decode("ascii"))
    except (UnicodeDecodeError, ValueError):
        raise BadHeaderError(f"PGM {field} is not an integer: {token!r}") from None


def load_pgm(data):
    """Decode a binary (P5) PGM byte stream into a uint8 image.

    Only ``maxval == 255`` is accepted. Bytes after the raster are ignored,
    which is how multi-image netpbm streams are read one image at a time.
    """
    data = bytes(data)
    if data[:2] != b"P5":
        raise BadMagicError(f"expected magic b'P5', got {data[:2]!r}")
    pos = 2
    if len(data) > pos and data[pos : pos + 1] not in _WHITESPACE and data[pos : pos + 1] != b"#":
        raise BadMagicError("magic number must be followed by whitespace")
    tok, pos = _next_token(data, pos)
    width = _header_int(tok, "width")
    tok, pos = _next_token(data, pos)
    height = _header_int(tok, "height")
    if width <= 0 or height <= 0:
        raise BadDimensionsError(f"nonpositive dimensions {width}x{height}")
    tok, pos = _next_token(data, pos)
    maxval = _header_int(tok, "maxval")
    if maxval != 255:
        raise BadMaxvalError(f"maxval must be 255, got {maxval}")
    if pos >= len(data) or data[pos : pos + 1] not in _WHITESPACE:
        raise BadHeaderError("maxval must be followed by a single whitespace byte")
    pos += 1
    need = width * height
    payload = data[pos : pos + need]
    if len(payload) < need:
        raise TruncatedPayloadError(f"expected {need} sample bytes, found {len(payload)}")
    return np.frombuffer(payload, dtype=np.uint8).reshape(height, width).copy()


def save_pgm(img):
    """Encode an image as binary PGM with header ``P5\\n<w> <h>\\n255\\n``."""
    img = check_image(img)
    h, w = img.shape
    return b"P5\n%d %d\n255\n" % (w, h) + img.tobytes()


def read_pgm(path):
    with open(path, "rb") as fh:
        return load_pgm(fh.read())


def write_pgm(path, img):
    data = save_pgm(img)
    with open(path, "wb") as fh:
        fh.write(data)
    return os.fspath(path)


def extract_window(img, x, y, size=3):
    """Return the ``size x size`` neighbourhood centred on column x, row y.

    Positions outside the image take the value of the nearest valid pixel.
    """
    if size not in WINDOW_SIZES:
        raise ValueError(f"window size must be one of {WINDOW_SIZES}, got {size}")
    img = np.asarray(img)
    h, w = img.shape
    if not (0 <= x < w and 0 <= y < h):
        raise IndexError(f"centre ({x}, {y}) outside {w}x{h} image")
    r = size // 2
    rows = np.clip(np.arange(y - r, y + r + 1), 0, h - 1)
    cols = np.clip(np.arange(x - r, x + r + 1), 0, w - 1)
    return img[np.ix_(rows, cols)]


def sliding_windows(img, size):
    """All edge-replicated ``size x size`` windows, shape ``(h, w, size*size)``."""
    r = size // 2
    padded = np.pad(img, r, mode="edge")
    win = np.lib.stride_tricks.sliding_window_view(padded, (size, size))
    return win.reshape(img.shape[0], img.shape[1], size * size)
