"""Manifest-driven datasets for training and evaluation.

A manifest is a CSV file whose header is exactly

    path,overall,balanced_elements,color_harmony,object_emphasis,good_lighting,rule_of_thirds,vivid_color

Each row names an image file (PPM or PNG) or a precomputed feature map
(.npy, shaped [C, h, w]) plus seven labels in [0, 1]. Relative paths are
resolved against the manifest's directory.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import DecodeError, EmptyDatasetError, ShapeError
from ..imagecore import load_image
from .config import NetworkConfig
from .scores import ATTRIBUTES
from .network import ScoringNetwork, image_to_input

MANIFEST_COLUMNS = ("path", "overall") + ATTRIBUTES


@dataclass
class ManifestRecord:
    path: Path
    overall: float
    attributes: np.ndarray  # [6] in ATTRIBUTES order


@dataclass
class TrainExample:
    """A prepared tensor: either a [3, H, W] input or a [C, h, w] feature map."""

    x: np.ndarray
    is_features: bool
    target_overall: float
    target_attrs: np.ndarray
    path: Path


def _parse_label(raw: str, column: str, line: int) -> float:
    try:
        value = float(raw)
    except ValueError as exc:
        raise ShapeError(f"manifest line {line}: {column} is not a number: {raw!r}") from exc
    if not 0.0 <= value <= 1.0 or not np.isfinite(value):
        raise ShapeError(f"manifest line {line}: {column}={value} outside [0, 1]")
    return value


def load_manifest(path: str | Path) -> list[ManifestRecord]:
    """Parse and validate a manifest CSV. Raises on a malformed header or
    out-of-range labels; raises EmptyDatasetError when there are no rows."""
    path = Path(path)
    base = path.parent
    records: list[ManifestRecord] = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyDatasetError(f"{path} is empty") from None
        if tuple(header) != MANIFEST_COLUMNS:
            raise ShapeError(
                f"manifest header must be {','.join(MANIFEST_COLUMNS)}, got {','.join(header)}"
            )
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(MANIFEST_COLUMNS):
                raise ShapeError(
                    f"manifest line {line_no}: expected {len(MANIFEST_COLUMNS)} fields, got {len(row)}"
                )
            rel = Path(row[0])
            full = rel if rel.is_absolute() else base / rel
            overall = _parse_label(row[1], "overall", line_no)
            attrs = np.array(
                [_parse_label(row[2 + i], ATTRIBUTES[i], line_no) for i in range(len(ATTRIBUTES))]
            )
            records.append(ManifestRecord(full, overall, attrs))
    if not records:
        raise EmptyDatasetError(f"{path} has a header but no rows")
    return records


def split_records(records: list[ManifestRecord], rng: np.random.Generator,
                  train_fraction: float):
    """Shuffle then split; the training side gets floor(fraction * n) rows."""
    order = rng.permutation(len(records))
    n_train = int(len(records) * train_fraction)
    train = [records[i] for i in order[:n_train]]
    val = [records[i] for i in order[n_train:]]
    return train, val


def prepare_example(record: ManifestRecord, net: ScoringNetwork) -> TrainExample:
    """Decode one manifest row into a ready-to-train tensor.

    Raises DecodeError / ShapeError / ImageTooSmallError for rows that
    cannot be used; callers decide whether to skip or abort.
    """
    if record.path.suffix == ".npy":
        try:
            fm = np.load(record.path)
        except (OSError, ValueError) as exc:
            raise DecodeError(f"cannot load feature map {record.path}: {exc}") from exc
        fm = np.asarray(fm, dtype=np.float64)
        if fm.ndim != 3:
            raise ShapeError(f"{record.path}: feature map must be [C, h, w], got {fm.shape}")
        if fm.shape[0] != net.cfg.feature_channels:
            raise ShapeError(
                f"{record.path}: {fm.shape[0]} channels, model expects {net.cfg.feature_channels}"
            )
        if not np.all(np.isfinite(fm)):
            raise ShapeError(f"{record.path}: feature map has non-finite values")
        return TrainExample(fm, True, record.overall, record.attributes.copy(), record.path)

    img = load_image(record.path)
    net.check_input_size(img)
    x = image_to_input(img, net.cfg.colorspace)
    return TrainExample(x, False, record.overall, record.attributes.copy(), record.path)
