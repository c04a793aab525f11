"""Saliency-based subject estimation.

The detector is closed-form (contrast + edge energy), so it runs in
real time without a learned model; the SubjectRegion interface does not
expose how the region was found, so a learned detector can replace it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ImageTooSmallError, NoSubjectError
from ..imagecore import RasterImage, box_blur_3x3, luma, resample_bilinear, sobel_magnitude

SALIENCY_MAX_DIM = 256
MIN_SUBJECT_SIDE = 16
MASK_THRESHOLD = 0.5      # keep pixels with saliency >= this fraction of the max
MAX_PEAKS = 3
PEAK_MIN_SEPARATION = 0.1  # normalized distance between reported maxima
UNIFORM_TOLERANCE = 1e-9  # raw signal below this is float noise, not content


@dataclass(frozen=True)
class SubjectRegion:
    """Normalized subject geometry: all coordinates are fractions of the frame."""

    bbox: tuple[float, float, float, float]  # (x0, y0, x1, y1)
    centroid: tuple[float, float]
    area_frac: float
    orientation_deg: float  # principal axis, y-down, in [-90, 90)
    eccentricity: float     # major/minor axis ratio, >= 1
    peaks: tuple[tuple[float, float], ...]

    def __post_init__(self):
        x0, y0, x1, y1 = self.bbox
        if not (x0 < x1 and y0 < y1):
            raise ValueError(f"degenerate bbox {self.bbox}")
        cx, cy = self.centroid
        if not (x0 <= cx <= x1 and y0 <= cy <= y1):
            raise ValueError(f"centroid {self.centroid} outside bbox {self.bbox}")


def _normalize(plane: np.ndarray) -> np.ndarray:
    peak = plane.max()
    return plane / peak if peak > UNIFORM_TOLERANCE else np.zeros_like(plane)


def saliency_map(img: RasterImage) -> np.ndarray:
    """Blurred mix of luma contrast and edge magnitude on a <=256 downsample."""
    small = resample_bilinear(img, SALIENCY_MAX_DIM)
    y = luma(small)
    contrast = _normalize(np.abs(y - y.mean()))
    edges = _normalize(sobel_magnitude(small).magnitude)
    return box_blur_3x3(0.5 * contrast + 0.5 * edges)


_PEAK_CANDIDATES = 2048  # bounds the greedy scan; real maxima sort first anyway


def _local_maxima(s: np.ndarray) -> np.ndarray:
    """Pixels >= all 8 neighbours (plateaus count; NMS picks one per plateau)."""
    padded = np.pad(s, 1, constant_values=-np.inf)
    out = np.ones(s.shape, dtype=bool)
    h, w = s.shape
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di == 0 and dj == 0:
                continue
            out &= s >= padded[1 + di:1 + di + h, 1 + dj:1 + dj + w]
    return out


def _find_peaks(s: np.ndarray, mask: np.ndarray) -> tuple[tuple[float, float], ...]:
    """Greedy non-max suppression over masked local maxima, strongest first."""
    h, w = s.shape
    keep = mask & _local_maxima(s)
    ii, jj = np.nonzero(keep)
    order = np.argsort(s[keep], kind="stable")[::-1][:_PEAK_CANDIDATES]
    picked: list[tuple[float, float]] = []
    for k in order:
        x = (jj[k] + 0.5) / w
        y = (ii[k] + 0.5) / h
        if all(math.hypot(x - px, y - py) >= PEAK_MIN_SEPARATION for px, py in picked):
            picked.append((x, y))
            if len(picked) == MAX_PEAKS:
                break
    return tuple(picked)


def estimate_subject(img: RasterImage) -> SubjectRegion:
    """Locate the dominant subject. Raises NoSubjectError on a flat frame."""
    if img.width < MIN_SUBJECT_SIDE or img.height < MIN_SUBJECT_SIDE:
        raise ImageTooSmallError(
            f"subject detection needs at least {MIN_SUBJECT_SIDE}x{MIN_SUBJECT_SIDE}, "
            f"got {img.width}x{img.height}"
        )
    s = saliency_map(img)
    peak = s.max()
    if peak <= UNIFORM_TOLERANCE:
        raise NoSubjectError("uniform frame: saliency is zero everywhere")
    mask = s >= MASK_THRESHOLD * peak

    h, w = s.shape
    ii, jj = np.nonzero(mask)
    x0, x1 = jj.min() / w, (jj.max() + 1) / w
    y0, y1 = ii.min() / h, (ii.max() + 1) / h

    weights = s[mask]
    wsum = weights.sum()
    cx = float(weights @ ((jj + 0.5) / w)) / wsum
    cy = float(weights @ ((ii + 0.5) / h)) / wsum

    # second moments in pixel coordinates so non-square frames keep true angles
    px = jj + 0.5
    py = ii + 0.5
    mx = float(weights @ px) / wsum
    my = float(weights @ py) / wsum
    mu20 = float(weights @ (px - mx) ** 2) / wsum
    mu02 = float(weights @ (py - my) ** 2) / wsum
    mu11 = float(weights @ ((px - mx) * (py - my))) / wsum

    theta = 0.5 * math.atan2(2.0 * mu11, mu20 - mu02)
    orientation = math.degrees(theta)
    if orientation >= 90.0:
        orientation -= 180.0

    half_trace = 0.5 * (mu20 + mu02)
    spread = math.hypot(0.5 * (mu20 - mu02), mu11)
    l1 = half_trace + spread
    l2 = max(half_trace - spread, 0.0)
    if l2 <= 1e-12 * max(l1, 1.0):
        eccentricity = 1.0 if l1 <= 1e-12 else math.inf
    else:
        eccentricity = math.sqrt(l1 / l2)

    return SubjectRegion(
        bbox=(x0, y0, x1, y1),
        centroid=(cx, cy),
        area_frac=(x1 - x0) * (y1 - y0),
        orientation_deg=orientation,
        eccentricity=eccentricity,
        peaks=_find_peaks(s, mask),
    )
