"""Luminance statistics used by the brightness prompts.

Luma is Rec. 709 weighted (0.2126 R + 0.7152 G + 0.0722 B) on the
gamma-encoded sRGB values, matching what a viewfinder-style brightness
heuristic sees. Near-black / near-white clipping bands are 0.05 / 0.95.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .raster import Colorspace, RasterImage

LUMA_WEIGHTS = (0.2126, 0.7152, 0.0722)
CLIP_LOW = 0.05
CLIP_HIGH = 0.95
HISTOGRAM_BINS = 256


def luma(img: RasterImage) -> np.ndarray:
    """Per-pixel luma map in [0, 1] for an sRGB image."""
    img.require_colorspace(Colorspace.SRGB)
    w = np.asarray(LUMA_WEIGHTS)
    return img.pixels @ w


@dataclass(frozen=True)
class LuminanceStats:
    mean: float
    stddev: float
    clipped_low_frac: float
    clipped_high_frac: float
    histogram: np.ndarray = field(repr=False)


def luma_stats(img: RasterImage) -> LuminanceStats:
    """Mean/stddev/clipping fractions plus a 256-bin luma histogram."""
    y = luma(img)
    n = y.size
    bins = np.minimum((y * HISTOGRAM_BINS).astype(np.int64), HISTOGRAM_BINS - 1)
    hist = np.bincount(bins.ravel(), minlength=HISTOGRAM_BINS)
    return LuminanceStats(
        mean=float(y.mean()),
        stddev=float(y.std()),
        clipped_low_frac=float(np.count_nonzero(y < CLIP_LOW) / n),
        clipped_high_frac=float(np.count_nonzero(y > CLIP_HIGH) / n),
        histogram=hist,
    )
