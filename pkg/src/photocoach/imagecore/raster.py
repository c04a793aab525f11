"""Raster image container used by every other module.

Pixels are kept as a float64 (height, width, 3) array in row-major order,
tagged with the color space that defines the channel semantics and ranges:

    SRGB  all channels in [0, 1] (gamma-encoded)
    HSV   H in [0, 360), S and V in [0, 1]
    LAB   L in [0, 100], a and b in [-128, 127]
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..errors import ColorspaceError, ShapeError


class Colorspace(Enum):
    SRGB = "srgb"
    HSV = "hsv"
    LAB = "lab"


# (low, high) per channel; HSV hue upper bound is exclusive.
_CHANNEL_RANGES = {
    Colorspace.SRGB: ((0.0, 1.0), (0.0, 1.0), (0.0, 1.0)),
    Colorspace.HSV: ((0.0, 360.0), (0.0, 1.0), (0.0, 1.0)),
    Colorspace.LAB: ((0.0, 100.0), (-128.0, 127.0), (-128.0, 127.0)),
}

_RANGE_TOL = 1e-9


@dataclass(frozen=True)
class RasterImage:
    """Immutable raster: (height, width, 3) float64 pixel array + color space."""

    pixels: np.ndarray
    colorspace: Colorspace = Colorspace.SRGB

    def __post_init__(self):
        px = np.asarray(self.pixels, dtype=np.float64)
        if px.ndim != 3 or px.shape[2] != 3:
            raise ShapeError(f"pixel array must be (H, W, 3), got {px.shape}")
        if px.shape[0] < 1 or px.shape[1] < 1:
            raise ShapeError("image must be at least 1x1")
        if not np.all(np.isfinite(px)):
            raise ShapeError("pixel values must be finite")
        px = np.ascontiguousarray(px)
        px.setflags(write=False)
        object.__setattr__(self, "pixels", px)
        self._check_ranges()

    def _check_ranges(self):
        for ch, (lo, hi) in enumerate(_CHANNEL_RANGES[self.colorspace]):
            vals = self.pixels[:, :, ch]
            if vals.min() < lo - _RANGE_TOL or vals.max() > hi + _RANGE_TOL:
                raise ShapeError(
                    f"channel {ch} out of {self.colorspace.value} range "
                    f"[{lo}, {hi}]: saw [{vals.min()}, {vals.max()}]"
                )

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def require_colorspace(self, expected: Colorspace):
        if self.colorspace is not expected:
            raise ColorspaceError(
                f"expected {expected.value} image, got {self.colorspace.value}"
            )

    def content_digest_bytes(self) -> bytes:
        """Canonical byte encoding of the pixel content (for hashing)."""
        header = f"{self.colorspace.value}:{self.width}x{self.height}:".encode()
        return header + self.pixels.tobytes()


def constant_image(width: int, height: int, rgb=(0.5, 0.5, 0.5)) -> RasterImage:
    """Uniform sRGB image; handy for tests and fixtures."""
    px = np.empty((height, width, 3), dtype=np.float64)
    px[:, :] = rgb
    return RasterImage(px, Colorspace.SRGB)
