"""Spatial pyramid max-pooling: fixed-length vectors from any map size.

Bin boundaries use the floor-index partition: level n splits the rows into
bins [floor(i*H/n), floor((i+1)*H/n)) (columns analogous), which covers the
map exactly with no overlap. Output concatenates the levels in the order
given (default 4, 2, 1), channel-major within each level, so the default
levels yield 21 values per channel.

Gradient routing sends each pooled value's gradient to the first row-major
argmax cell of its bin; that tie rule is load-bearing for deterministic
tests.
"""

from __future__ import annotations

import numpy as np

from ..errors import ImageTooSmallError, ShapeError

DEFAULT_LEVELS = (4, 2, 1)


def spp_output_length(channels: int, levels=DEFAULT_LEVELS) -> int:
    return channels * sum(n * n for n in levels)


def _check_size(shape, levels):
    if len(shape) != 3:
        raise ShapeError(f"feature map must be [C, H, W], got {shape}")
    _, h, w = shape
    need = max(levels)
    if h < need or w < need:
        raise ImageTooSmallError(
            f"feature map {h}x{w} smaller than the largest pyramid level {need}"
        )


def _bin_edges(size: int, n: int) -> list[int]:
    return [(i * size) // n for i in range(n + 1)]


def spp_pool(fm: np.ndarray, levels=DEFAULT_LEVELS) -> np.ndarray:
    """Pool [C, H, W] into a vector of length C * sum(n^2)."""
    _check_size(fm.shape, levels)
    c, h, w = fm.shape
    segments = []
    for n in levels:
        rows = _bin_edges(h, n)
        cols = _bin_edges(w, n)
        seg = np.empty((c, n, n))
        for i in range(n):
            for j in range(n):
                seg[:, i, j] = fm[:, rows[i] : rows[i + 1], cols[j] : cols[j + 1]].max(axis=(1, 2))
        segments.append(seg.reshape(c * n * n))
    return np.concatenate(segments)


def spp_backward(fm: np.ndarray, levels, upstream: np.ndarray) -> np.ndarray:
    """Route each pooled gradient to its bin's argmax cell (first row-major
    occurrence on ties); cells may accumulate from several levels."""
    _check_size(fm.shape, levels)
    c, h, w = fm.shape
    if upstream.shape != (spp_output_length(c, levels),):
        raise ShapeError(
            f"upstream grad length {upstream.shape} != ({spp_output_length(c, levels)},)"
        )
    grad = np.zeros_like(fm)
    idx = 0
    for n in levels:
        rows = _bin_edges(h, n)
        cols = _bin_edges(w, n)
        for ch in range(c):
            for i in range(n):
                for j in range(n):
                    block = fm[ch, rows[i] : rows[i + 1], cols[j] : cols[j + 1]]
                    flat = int(np.argmax(block))
                    bi, bj = divmod(flat, block.shape[1])
                    grad[ch, rows[i] + bi, cols[j] + bj] += upstream[idx]
                    idx += 1
    return grad
