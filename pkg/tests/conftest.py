"""Shared fixture generators and numeric helpers for the test suite."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from photocoach.imagecore import RasterImage, save_ppm
from photocoach.model import MANIFEST_COLUMNS


def gray_image(plane: np.ndarray) -> RasterImage:
    """Wrap a 2-D [0,1] plane as a gray RasterImage."""
    return RasterImage(np.repeat(np.asarray(plane, dtype=np.float64)[:, :, None], 3, axis=2))


def blob_frame(cx: float, cy: float, size: int = 128, sigma: float = 0.07,
               amplitude: float = 0.9, ramp: bool = True) -> RasterImage:
    """Bright gaussian blob at normalized (cx, cy).

    The default background is a horizontal luma ramp averaging mid-gray,
    which keeps the mirror-symmetry score low so position prompts are not
    swallowed by an accidental Symmetric match.
    """
    jj, ii = np.meshgrid(np.arange(size), np.arange(size))
    x = (jj + 0.5) / size
    y = (ii + 0.5) / size
    base = 0.35 + 0.3 * x if ramp else np.full((size, size), 0.45)
    blob = np.exp(-((x - cx) ** 2 + (y - cy) ** 2) / (2 * sigma**2))
    return gray_image(np.clip(base + amplitude * blob, 0.0, 1.0))


def flat_blob_px(size: int, cx_px: float, cy_px: float, sigma_px: float = 7.0) -> RasterImage:
    """Blob on a flat field, positioned in pixel units for exact centroids."""
    jj, ii = np.meshgrid(np.arange(size), np.arange(size))
    blob = np.exp(-(((jj + 0.5) - cx_px) ** 2 + ((ii + 0.5) - cy_px) ** 2) / (2 * sigma_px**2))
    return gray_image(np.clip(0.45 + 0.5 * blob, 0.0, 1.0))


def square_frame(size: int, cx_px: int, cy_px: int, half: int = 4,
                 fg: float = 1.0, bg: float = 0.0) -> RasterImage:
    plane = np.full((size, size), bg)
    plane[cy_px - half:cy_px + half + 1, cx_px - half:cx_px + half + 1] = fg
    return gray_image(plane)


def mirror_frame(size: int = 64) -> RasterImage:
    """Exactly left-right symmetric two-pillar fixture."""
    plane = np.full((size, size), 0.4)
    q = size // 6
    plane[q * 2:q * 4, q:q * 2] = 0.9
    plane[q * 2:q * 4, size - q * 2:size - q] = 0.9
    return gray_image(plane)


def mirrored(img: RasterImage) -> RasterImage:
    return RasterImage(np.ascontiguousarray(img.pixels[:, ::-1, :]), img.colorspace)


def write_manifest(directory: Path, rows: list[tuple[str, np.ndarray]]) -> Path:
    """rows: (relative path, 7 labels). Returns the manifest path."""
    manifest = directory / "manifest.csv"
    with open(manifest, "w") as fh:
        fh.write(",".join(MANIFEST_COLUMNS) + "\n")
        for rel, labels in rows:
            fh.write(rel + "," + ",".join(f"{v:.10f}" for v in labels) + "\n")
    return manifest


def make_overfit_fixture(directory: Path, n: int = 8, side: int = 24, seed: int = 42) -> Path:
    """The 8-image synthetic training fixture: seeded noise images with
    labels in [0.2, 0.8], written as PPM plus a manifest."""
    rng = np.random.default_rng(seed)
    rows = []
    for i in range(n):
        img = RasterImage(rng.random((side, side, 3)))
        name = f"img{i}.ppm"
        save_ppm(img, directory / name)
        rows.append((name, 0.2 + 0.6 * rng.random(7)))
    return write_manifest(directory, rows)


def rel_err(analytic: float, numeric: float) -> float:
    return abs(analytic - numeric) / max(abs(analytic), abs(numeric), 1e-6)


def max_rel_err(analytic: np.ndarray, numeric: np.ndarray) -> float:
    """Worst elementwise relative error between two same-shape arrays."""
    a = np.asarray(analytic, dtype=np.float64)
    n = np.asarray(numeric, dtype=np.float64)
    denom = np.maximum(np.maximum(np.abs(a), np.abs(n)), 1e-6)
    return float(np.max(np.abs(a - n) / denom))


def numeric_gradient(f, arr: np.ndarray, h: float = 1e-5) -> np.ndarray:
    """Central finite differences of scalar f() w.r.t. every entry of arr,
    mutating arr in place and restoring it."""
    grad = np.zeros_like(arr, dtype=np.float64)
    flat = arr.ravel()
    gflat = grad.ravel()
    for i in range(flat.size):
        orig = flat[i]
        flat[i] = orig + h
        fp = f()
        flat[i] = orig - h
        fm = f()
        flat[i] = orig
        gflat[i] = (fp - fm) / (2.0 * h)
    return grad


def spp_oracle(fm: np.ndarray, levels) -> np.ndarray:
    """Brute-force bin-max pyramid pooling."""
    c, height, width = fm.shape
    out = []
    for n in levels:
        for ch in range(c):
            for i in range(n):
                for j in range(n):
                    r0, r1 = (i * height) // n, ((i + 1) * height) // n
                    c0, c1 = (j * width) // n, ((j + 1) * width) // n
                    out.append(fm[ch, r0:r1, c0:c1].max())
    return np.array(out)


@pytest.fixture
def tmp_store(tmp_path):
    return tmp_path / "store"
