"""Sobel gradient magnitude and small blur kernels on the luma channel."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import ImageTooSmallError
from .raster import RasterImage
from .stats import luma

_SOBEL_X = np.array([[-1.0, 0.0, 1.0], [-2.0, 0.0, 2.0], [-1.0, 0.0, 1.0]])
_SOBEL_Y = _SOBEL_X.T


@dataclass(frozen=True)
class GradientMap:
    magnitude: np.ndarray = field(repr=False)

    @property
    def width(self) -> int:
        return self.magnitude.shape[1]

    @property
    def height(self) -> int:
        return self.magnitude.shape[0]


def _correlate3x3(plane: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    padded = np.pad(plane, 1, mode="edge")
    out = np.zeros_like(plane)
    for dy in range(3):
        for dx in range(3):
            out += kernel[dy, dx] * padded[dy : dy + plane.shape[0], dx : dx + plane.shape[1]]
    return out


def sobel_magnitude(img: RasterImage) -> GradientMap:
    """3x3 Sobel on luma with replicate-padded borders."""
    if img.width < 3 or img.height < 3:
        raise ImageTooSmallError(
            f"sobel needs at least 3x3, got {img.width}x{img.height}"
        )
    y = luma(img)
    gx = _correlate3x3(y, _SOBEL_X)
    gy = _correlate3x3(y, _SOBEL_Y)
    return GradientMap(np.sqrt(gx * gx + gy * gy))


def box_blur_3x3(plane: np.ndarray) -> np.ndarray:
    """Replicate-padded 3x3 mean filter on a 2D array."""
    kernel = np.full((3, 3), 1.0 / 9.0)
    return _correlate3x3(plane, kernel)
