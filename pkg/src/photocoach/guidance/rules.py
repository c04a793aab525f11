"""Composition rule detectors.

Every tunable threshold lives in the constants block below; the detectors
themselves are deliberately simple closed forms over the SubjectRegion and
a downsampled luma/gradient view of the frame.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..imagecore import RasterImage, luma, resample_bilinear, sobel_magnitude
from .subject import SALIENCY_MAX_DIM, SubjectRegion

# -- tuning constants, all in one place ------------------------------------
THIRDS_FALLOFF = 1.0 / 6.0        # distance at which a thirds/center score hits 0
POSITION_DEADBAND = 1.0 / 12.0    # no direction prompt within this of a power point
SYMMETRY_FALLOFF = 0.16           # mean mirror difference at which symmetry hits 0
DIAGONAL_TOLERANCE_DEG = 15.0     # angular window around +-45 degrees
DIAGONAL_MIN_ECCENTRICITY = 2.0   # subject must be clearly elongated
FRAME_RING_FRACTION = 0.125       # border ring width as a fraction of min(H, W)
FRAME_RATIO_DIVISOR = 2.0         # ring/interior gradient excess for a full score
TRIANGLE_BASE_SCALE = 0.3         # base span for a full triangle score
AREA_MIN_FRAC = 0.05              # below this the subject is too small
AREA_MAX_FRAC = 0.6               # above this the subject is too large
MATCH_THRESHOLD = 0.5             # best score needed to call a rule matched
SUGGESTION_CUTOFF = 40            # display score below which a suggestion fires

POWER_POINTS = (
    (1.0 / 3.0, 1.0 / 3.0),
    (1.0 / 3.0, 2.0 / 3.0),
    (2.0 / 3.0, 1.0 / 3.0),
    (2.0 / 3.0, 2.0 / 3.0),
)


class CompositionRule(Enum):
    RULE_OF_THIRDS = "rule_of_thirds"
    CENTER = "center"
    SYMMETRIC = "symmetric"
    DIAGONAL = "diagonal"
    FRAMED = "framed"
    TRIANGLE = "triangle"


# ties break toward the earlier rule in this order
RULE_PRIORITY = (
    CompositionRule.RULE_OF_THIRDS,
    CompositionRule.CENTER,
    CompositionRule.SYMMETRIC,
    CompositionRule.DIAGONAL,
    CompositionRule.FRAMED,
    CompositionRule.TRIANGLE,
)


@dataclass(frozen=True)
class CompositionVerdict:
    scores: dict[str, float]  # keyed by CompositionRule.value, all in [0, 1]
    best: CompositionRule | None
    matched: bool

    def __post_init__(self):
        expected = {rule.value for rule in CompositionRule}
        if set(self.scores) != expected:
            raise ValueError(f"verdict must score all six rules, got {set(self.scores)}")


def nearest_power_point(centroid: tuple[float, float]) -> tuple[tuple[float, float], float]:
    """The closest thirds intersection and the distance to it."""
    cx, cy = centroid
    best = POWER_POINTS[0]
    best_d = math.inf
    for point in POWER_POINTS:
        d = math.hypot(cx - point[0], cy - point[1])
        if d < best_d:
            best, best_d = point, d
    return best, best_d


def _axis_angle_distance(a_deg: float, b_deg: float) -> float:
    """Distance between undirected axes (180-degree periodic)."""
    d = abs(a_deg - b_deg) % 180.0
    return min(d, 180.0 - d)


def _thirds_score(subject: SubjectRegion) -> float:
    _, d = nearest_power_point(subject.centroid)
    return max(0.0, 1.0 - d / THIRDS_FALLOFF)


def _center_score(subject: SubjectRegion) -> float:
    cx, cy = subject.centroid
    d = math.hypot(cx - 0.5, cy - 0.5)
    return max(0.0, 1.0 - d / THIRDS_FALLOFF)


def _symmetric_score(y: np.ndarray) -> float:
    m = float(np.mean(np.abs(y - y[:, ::-1])))
    return max(0.0, 1.0 - m / SYMMETRY_FALLOFF)


def _diagonal_score(subject: SubjectRegion) -> float:
    if subject.eccentricity < DIAGONAL_MIN_ECCENTRICITY:
        return 0.0
    off = min(
        _axis_angle_distance(subject.orientation_deg, 45.0),
        _axis_angle_distance(subject.orientation_deg, -45.0),
    )
    return max(0.0, 1.0 - off / DIAGONAL_TOLERANCE_DEG)


def _framed_score(grad: np.ndarray) -> float:
    h, w = grad.shape
    ring = max(1, int(min(h, w) * FRAME_RING_FRACTION))
    if 2 * ring >= h or 2 * ring >= w:
        return 0.0
    interior = grad[ring:h - ring, ring:w - ring]
    total = grad.sum()
    interior_sum = interior.sum()
    ring_count = grad.size - interior.size
    ring_mean = (total - interior_sum) / ring_count
    interior_mean = interior_sum / interior.size
    if interior_mean == 0.0:
        return 1.0 if ring_mean > 0.0 else 0.0
    return min(1.0, max(0.0, (ring_mean / interior_mean - 1.0) / FRAME_RATIO_DIVISOR))


def _triangle_score(subject: SubjectRegion) -> float:
    if len(subject.peaks) < 3:
        return 0.0
    apex_idx = min(range(3), key=lambda k: subject.peaks[k][1])
    apex = subject.peaks[apex_idx]
    base = [subject.peaks[k] for k in range(3) if k != apex_idx]
    if not (apex[1] < base[0][1] and apex[1] < base[1][1]):
        return 0.0
    cross = abs(
        (base[0][0] - apex[0]) * (base[1][1] - apex[1])
        - (base[0][1] - apex[1]) * (base[1][0] - apex[0])
    )
    if cross < 1e-6:
        return 0.0
    width = math.hypot(base[0][0] - base[1][0], base[0][1] - base[1][1])
    return min(1.0, width / TRIANGLE_BASE_SCALE)


def match_rules(subject: SubjectRegion, img: RasterImage) -> CompositionVerdict:
    """Score all six rules and pick the best by priority-broken argmax."""
    small = resample_bilinear(img, SALIENCY_MAX_DIM)
    y = luma(small)
    grad = sobel_magnitude(small).magnitude

    scores = {
        CompositionRule.RULE_OF_THIRDS.value: _thirds_score(subject),
        CompositionRule.CENTER.value: _center_score(subject),
        CompositionRule.SYMMETRIC.value: _symmetric_score(y),
        CompositionRule.DIAGONAL.value: _diagonal_score(subject),
        CompositionRule.FRAMED.value: _framed_score(grad),
        CompositionRule.TRIANGLE.value: _triangle_score(subject),
    }
    best = RULE_PRIORITY[0]
    for rule in RULE_PRIORITY[1:]:
        if scores[rule.value] > scores[best.value]:
            best = rule
    return CompositionVerdict(
        scores=scores, best=best, matched=scores[best.value] >= MATCH_THRESHOLD
    )
