"""Image file ingestion: binary PPM (P6, maxval 255) and PNG.

PPM is parsed and written by hand so test fixtures are bit-exact; PNG goes
through Pillow. 8-bit channels map to [0, 1] by dividing by 255.
"""

from __future__ import annotations

import io
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from ..errors import DecodeError
from .raster import Colorspace, RasterImage

_PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def decode_image(data: bytes) -> RasterImage:
    """Decode PPM (P6) or PNG bytes into an sRGB raster."""
    if data[:2] == b"P6":
        return _decode_ppm(data)
    if data[: len(_PNG_MAGIC)] == _PNG_MAGIC:
        return _decode_png(data)
    raise DecodeError("unrecognized image format (expected P6 PPM or PNG)")


def load_image(path: str | Path) -> RasterImage:
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise DecodeError(f"cannot read image file {path}: {exc}") from exc
    return decode_image(data)


def _decode_png(data: bytes) -> RasterImage:
    try:
        with Image.open(io.BytesIO(data)) as im:
            rgb = np.asarray(im.convert("RGB"), dtype=np.float64)
    except (UnidentifiedImageError, OSError, ValueError) as exc:
        raise DecodeError(f"bad PNG data: {exc}") from exc
    return RasterImage(rgb / 255.0, Colorspace.SRGB)


def _decode_ppm(data: bytes) -> RasterImage:
    pos = 2  # past magic
    fields = []
    while len(fields) < 3:
        # skip whitespace and '#' comments between header fields
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos : pos + 1] == b"#":
            while pos < len(data) and data[pos] != 0x0A:
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        if start == pos:
            raise DecodeError("truncated PPM header")
        try:
            fields.append(int(data[start:pos]))
        except ValueError as exc:
            raise DecodeError(f"bad PPM header field: {data[start:pos]!r}") from exc
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise DecodeError(f"bad PPM dimensions {width}x{height}")
    if maxval != 255:
        raise DecodeError(f"only maxval 255 PPM supported, got {maxval}")
    pos += 1  # single whitespace byte after maxval
    expected = width * height * 3
    raw = data[pos : pos + expected]
    if len(raw) != expected:
        raise DecodeError(
            f"PPM pixel data truncated: expected {expected} bytes, got {len(raw)}"
        )
    px = np.frombuffer(raw, dtype=np.uint8).astype(np.float64).reshape(height, width, 3)
    return RasterImage(px / 255.0, Colorspace.SRGB)


def encode_ppm(img: RasterImage) -> bytes:
    """Write a P6 PPM (maxval 255); sRGB images only."""
    img.require_colorspace(Colorspace.SRGB)
    header = f"P6\n{img.width} {img.height}\n255\n".encode()
    quantized = np.clip(np.rint(img.pixels * 255.0), 0, 255).astype(np.uint8)
    return header + quantized.tobytes()


def save_ppm(img: RasterImage, path: str | Path):
    Path(path).write_bytes(encode_ppm(img))


def encode_png(img: RasterImage) -> bytes:
    img.require_colorspace(Colorspace.SRGB)
    quantized = np.clip(np.rint(img.pixels * 255.0), 0, 255).astype(np.uint8)
    buf = io.BytesIO()
    Image.fromarray(quantized, mode="RGB").save(buf, format="PNG")
    return buf.getvalue()


def save_png(img: RasterImage, path: str | Path):
    Path(path).write_bytes(encode_png(img))
