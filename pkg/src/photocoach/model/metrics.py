"""Rank correlation and agreement metrics for model evaluation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ShapeError, UndefinedCorrelationError
from .scores import ATTRIBUTES


def average_ranks(values) -> np.ndarray:
    """1-based ranks; tied values all get the mean of their positions."""
    v = np.asarray(values, dtype=np.float64)
    if v.ndim != 1:
        raise ShapeError(f"ranks need a 1-D vector, got shape {v.shape}")
    order = np.argsort(v, kind="stable")
    ranks = np.empty(len(v), dtype=np.float64)
    i = 0
    sv = v[order]
    while i < len(v):
        j = i
        while j + 1 < len(v) and sv[j + 1] == sv[i]:
            j += 1
        ranks[order[i:j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def spearman(a, b) -> float:
    """Spearman rank correlation: Pearson correlation of average ranks.

    Raises UndefinedCorrelationError when either side is constant (the
    rank variance is zero, so the coefficient has no value).
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise ShapeError(f"need equal-length vectors, got {a.shape} and {b.shape}")
    if len(a) < 2:
        raise UndefinedCorrelationError("correlation needs at least two points")
    ra = average_ranks(a)
    rb = average_ranks(b)
    da = ra - ra.mean()
    db = rb - rb.mean()
    denom = np.sqrt((da @ da) * (db @ db))
    if denom == 0.0:
        raise UndefinedCorrelationError("constant vector: rank variance is zero")
    return float((da @ db) / denom)


def agreement_above_half(pred, target) -> float:
    """Fraction of pairs where (pred > 0.5) matches (target > 0.5)."""
    pred = np.asarray(pred, dtype=np.float64)
    target = np.asarray(target, dtype=np.float64)
    if pred.shape != target.shape:
        raise ShapeError(f"shape mismatch {pred.shape} vs {target.shape}")
    return float(np.mean((pred > 0.5) == (target > 0.5)))


@dataclass
class EvaluationReport:
    """Per-output rank correlation (None where undefined) and agreement."""

    count: int
    spearman_overall: float | None
    spearman_attributes: dict[str, float | None]
    agreement_overall: float
    agreement_attributes: dict[str, float]

    def to_dict(self) -> dict:
        return {
            "count": self.count,
            "spearman_overall": self.spearman_overall,
            "spearman_attributes": dict(self.spearman_attributes),
            "agreement_overall": self.agreement_overall,
            "agreement_attributes": dict(self.agreement_attributes),
        }


def _safe_spearman(a, b) -> float | None:
    try:
        return spearman(a, b)
    except UndefinedCorrelationError:
        return None


def evaluate_predictions(pred_overall, pred_attrs, target_overall, target_attrs) -> EvaluationReport:
    """Build an EvaluationReport from stacked predictions and targets.

    pred_attrs / target_attrs are [n, 6] in canonical attribute order.
    """
    pred_overall = np.asarray(pred_overall, dtype=np.float64)
    target_overall = np.asarray(target_overall, dtype=np.float64)
    pred_attrs = np.asarray(pred_attrs, dtype=np.float64)
    target_attrs = np.asarray(target_attrs, dtype=np.float64)
    sp_attrs = {}
    ag_attrs = {}
    for i, name in enumerate(ATTRIBUTES):
        sp_attrs[name] = _safe_spearman(pred_attrs[:, i], target_attrs[:, i])
        ag_attrs[name] = agreement_above_half(pred_attrs[:, i], target_attrs[:, i])
    return EvaluationReport(
        count=len(pred_overall),
        spearman_overall=_safe_spearman(pred_overall, target_overall),
        spearman_attributes=sp_attrs,
        agreement_overall=agreement_above_half(pred_overall, target_overall),
        agreement_attributes=ag_attrs,
    )
