"""Block motion estimation (adaptive rood pattern search) and
motion-compensated temporal median denoising."""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .imagecore import read_pgm, write_pgm
from .validation import check_image, check_same_shape

_SDSP = ((0, 0), (1, 0), (-1, 0), (0, 1), (0, -1))


@dataclass
class MotionField:
    """Per-macroblock displacement ``(dx, dy)``: the block of the current
    frame at ``(x, y)`` matches the reference at ``(x + dx, y + dy)``.

    ``vectors`` has shape ``(block_rows, block_cols, 2)``; ``evaluations``
    counts the distinct SAD evaluations spent on each block.
    """

    block_size: int
    search_range: int
    vectors: np.ndarray
    evaluations: np.ndarray = field(default=None)

    def vector(self, block_row, block_col):
        dx, dy = self.vectors[block_row, block_col]
        return int(dx), int(dy)

    def to_csv(self, path_or_file):
        """Write ``block_x,block_y,dx,dy`` rows (block grid indices)."""
        own = isinstance(path_or_file, (str, os.PathLike))
        fh = open(path_or_file, "w", newline="") if own else path_or_file
        try:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["block_x", "block_y", "dx", "dy"])
            rows, cols, _ = self.vectors.shape
            for by in range(rows):
                for bx in range(cols):
                    dx, dy = self.vector(by, bx)
                    writer.writerow([bx, by, dx, dy])
        finally:
            if own:
                fh.close()


def _rank(point, cost):
    dx, dy = point
    return (cost, abs(dx) + abs(dy), dy, dx)


class _BlockSearch:
    """SAD cost with memoisation for one block."""

    def __init__(self, cur, ref, y0, x0, bh, bw, search_range):
        self.block = cur[y0 : y0 + bh, x0 : x0 + bw].astype(np.int32)
        self.ref = ref
        self.y0, self.x0, self.bh, self.bw = y0, x0, bh, bw
        self.R = search_range
        self.costs = {}

    def valid(self, p):
        dx, dy = p
        h, w = self.ref.shape
        return (
            abs(dx) <= self.R
            and abs(dy) <= self.R
            and 0 <= self.y0 + dy
            and self.y0 + dy + self.bh <= h
            and 0 <= self.x0 + dx
            and self.x0 + dx + self.bw <= w
        )

    def cost(self, p):
        if p not in self.costs:
            dx, dy = p
            cand = self.ref[self.y0 + dy : self.y0 + dy + self.bh, self.x0 + dx : self.x0 + dx + self.bw]
            self.costs[p] = int(np.abs(self.block - cand).sum())
        return self.costs[p]

    def best(self, points):
        pts = [p for p in dict.fromkeys(points) if self.valid(p)]
        return min(pts, key=lambda p: _rank(p, self.cost(p)))


def _clamp(v, r):
    return max(-r, min(r, v))


def arps_estimate(current, reference, block_size=16, search_range=7):
    """Adaptive rood pattern search with SAD cost.

    Per block: the prediction is the left neighbour's vector ((0, 0) in the
    first column). The first step examines the origin, the four rood points
    at arm length ``max(|px|, |py|)`` (1 for a zero prediction) and the
    predicted point; from the best of those a small diamond search repeats
    until its centre wins. Ties go to the smaller ``|dx| + |dy|``, then the
    smaller ``dy``, then the smaller ``dx``. Candidates are clamped to the
    search range; ones whose block would leave the reference are skipped.
    Blocks on the right and bottom edges are clipped.
    """
    cur = check_image(current, "current")
    ref = check_image(reference, "reference")
    check_same_shape(cur, ref, names=["current", "reference"])
    if block_size < 1 or search_range < 0:
        raise ValueError("block_size must be >= 1 and search_range >= 0")
    h, w = cur.shape
    rows = -(-h // block_size)
    cols = -(-w // block_size)
    vectors = np.zeros((rows, cols, 2), dtype=np.int32)
    evaluations = np.zeros((rows, cols), dtype=np.int32)
    R = search_range
    for by in range(rows):
        for bx in range(cols):
            y0, x0 = by * block_size, bx * block_size
            search = _BlockSearch(cur, ref, y0, x0, min(block_size, h - y0), min(block_size, w - x0), R)
            pred = tuple(int(v) for v in vectors[by, bx - 1]) if bx > 0 else (0, 0)
            arm = max(abs(pred[0]), abs(pred[1])) or 1
            rood = [(0, 0)] + [(_clamp(dx * arm, R), _clamp(dy * arm, R)) for dx, dy in _SDSP[1:]]
            centre = search.best(rood + [pred])
            while True:
                nxt = search.best([(_clamp(centre[0] + dx, R), _clamp(centre[1] + dy, R)) for dx, dy in _SDSP])
                if nxt == centre:
                    break
                centre = nxt
            vectors[by, bx] = centre
            evaluations[by, bx] = len(search.costs)
    return MotionField(block_size, search_range, vectors, evaluations)


def block_cost(current, reference, block_size, block_row, block_col, vector):
    """SAD of one block at a given displacement (None if it leaves the frame)."""
    cur = check_image(current, "current")
    ref = check_image(reference, "reference")
    h, w = cur.shape
    y0, x0 = block_row * block_size, block_col * block_size
    search = _BlockSearch(cur, ref, y0, x0, min(block_size, h - y0), min(block_size, w - x0), 10**9)
    vector = tuple(int(v) for v in vector)
    return search.cost(vector) if search.valid(vector) else None


def motion_compensate(reference, motion):
    """Predict the current frame by fetching each block from ``reference``
    at its motion vector; fetched coordinates are clamped to the frame."""
    ref = check_image(reference, "reference")
    h, w = ref.shape
    bs = motion.block_size
    yy, xx = np.indices(ref.shape)
    by = np.minimum(yy // bs, motion.vectors.shape[0] - 1)
    bx = np.minimum(xx // bs, motion.vectors.shape[1] - 1)
    dx = motion.vectors[by, bx, 0]
    dy = motion.vectors[by, bx, 1]
    return ref[np.clip(yy + dy, 0, h - 1), np.clip(xx + dx, 0, w - 1)]


def estimate_sequence_motion(frames, block_size=16, search_range=7):
    """``(backward, forward)`` motion fields for every interior frame ``t``:
    ``backward`` maps frame t onto t-1 and ``forward`` onto t+1. End frames
    get None."""
    frames = _check_sequence(frames, minimum=1)
    out = [None] * len(frames)
    for t in range(1, len(frames) - 1):
        out[t] = (
            arps_estimate(frames[t], frames[t - 1], block_size, search_range),
            arps_estimate(frames[t], frames[t + 1], block_size, search_range),
        )
    return out


def _check_sequence(frames, minimum):
    frames = [check_image(f, f"frame {k}") for k, f in enumerate(frames)]
    if len(frames) < minimum:
        raise ValueError(f"need at least {minimum} frames, got {len(frames)}")
    check_same_shape(*frames, names=[f"frame {k}" for k in range(len(frames))])
    return frames


def temporal_median_denoise(frames, motion=None):
    """Three-frame temporal median.

    Interior frame ``t`` becomes the per-pixel median of (previous frame,
    frame t, next frame); with ``motion`` (as returned by
    :func:`estimate_sequence_motion`) the neighbours are motion compensated
    first. The first and last frames are returned unchanged.
    """
    frames = _check_sequence(frames, minimum=3)
    if motion is not None and len(motion) != len(frames):
        raise ValueError("motion must hold one entry per frame")
    out = [frames[0].copy()]
    for t in range(1, len(frames) - 1):
        prev, nxt = frames[t - 1], frames[t + 1]
        if motion is not None and motion[t] is not None:
            backward, forward = motion[t]
            prev = motion_compensate(prev, backward)
            nxt = motion_compensate(nxt, forward)
        stack = np.stack([prev, frames[t], nxt])
        out.append(np.sort(stack, axis=0)[1])
    out.append(frames[-1].copy())
    return out


def read_frames(directory):
    """Frames from ``*.pgm`` files in a directory, in lexicographic order."""
    paths = sorted(Path(directory).glob("*.pgm"))
    if not paths:
        raise FileNotFoundError(f"no .pgm frames in {directory}")
    return [read_pgm(p) for p in paths], [p.name for p in paths]


def write_frames(directory, frames, names=None):
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    names = names or [f"frame_{k + 1:04d}.pgm" for k in range(len(frames))]
    return [write_pgm(directory / n, f) for n, f in zip(names, frames)]
