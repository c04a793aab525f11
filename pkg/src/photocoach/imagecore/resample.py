"""Aspect-preserving bilinear downsampling.

Only used for preview-scale work (saliency, rule matching). The scoring
network always receives the original pixels, so this module must never sit
on the scoring path.
"""

from __future__ import annotations

import numpy as np

from .raster import RasterImage


def resample_bilinear(img: RasterImage, max_dim: int) -> RasterImage:
    """Shrink so the larger dimension equals max_dim; never upsamples."""
    if max_dim < 1:
        raise ValueError("max_dim must be >= 1")
    w, h = img.width, img.height
    if max(w, h) <= max_dim:
        return img

    scale = max_dim / max(w, h)
    new_w = max(1, round(w * scale))
    new_h = max(1, round(h * scale))
    if w >= h:
        new_w = max_dim
    else:
        new_h = max_dim

    return RasterImage(
        _interp_grid(img.pixels, new_h, new_w), img.colorspace
    )


def _interp_grid(px: np.ndarray, new_h: int, new_w: int) -> np.ndarray:
    """Sample pixel centers: src = (dst + 0.5) * scale - 0.5, edge-clamped."""
    src_h, src_w = px.shape[:2]
    ys = (np.arange(new_h) + 0.5) * (src_h / new_h) - 0.5
    xs = (np.arange(new_w) + 0.5) * (src_w / new_w) - 0.5
    ys = np.clip(ys, 0.0, src_h - 1.0)
    xs = np.clip(xs, 0.0, src_w - 1.0)

    y0 = np.floor(ys).astype(np.int64)
    x0 = np.floor(xs).astype(np.int64)
    y1 = np.minimum(y0 + 1, src_h - 1)
    x1 = np.minimum(x0 + 1, src_w - 1)
    wy = (ys - y0)[:, None, None]
    wx = (xs - x0)[None, :, None]

    top = px[y0][:, x0] * (1.0 - wx) + px[y0][:, x1] * wx
    bottom = px[y1][:, x0] * (1.0 - wx) + px[y1][:, x1] * wx
    return top * (1.0 - wy) + bottom * wy
