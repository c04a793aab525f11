import numpy as np
import pytest

from photocoach.errors import DecodeError
from photocoach.imagecore import (
    RasterImage,
    decode_image,
    encode_png,
    encode_ppm,
    load_image,
    save_png,
    save_ppm,
)


def quantized(px: np.ndarray) -> np.ndarray:
    return np.rint(px * 255.0) / 255.0


def test_ppm_round_trip_exact_on_grid(tmp_path):
    rng = np.random.default_rng(1)
    px = quantized(rng.random((7, 5, 3)))
    img = RasterImage(px)
    path = tmp_path / "x.ppm"
    save_ppm(img, path)
    back = load_image(path)
    assert np.array_equal(back.pixels, px)


def test_png_round_trip_exact_on_grid(tmp_path):
    rng = np.random.default_rng(2)
    px = quantized(rng.random((6, 9, 3)))
    path = tmp_path / "x.png"
    save_png(RasterImage(px), path)
    back = load_image(path)
    assert np.array_equal(back.pixels, px)


def test_ppm_header_comments_and_whitespace():
    body = bytes([255, 0, 0, 0, 255, 0])
    data = b"P6\n# comment line\n2 1\n# another\n255\n" + body
    img = decode_image(data)
    assert img.width == 2 and img.height == 1
    assert np.allclose(img.pixels[0, 0], [1.0, 0.0, 0.0])
    assert np.allclose(img.pixels[0, 1], [0.0, 1.0, 0.0])


def test_ppm_rejects_bad_maxval_and_truncation():
    with pytest.raises(DecodeError):
        decode_image(b"P6\n2 1\n65535\n" + bytes(12))
    with pytest.raises(DecodeError):
        decode_image(b"P6\n2 2\n255\n" + bytes(5))  # needs 12 bytes
    with pytest.raises(DecodeError):
        decode_image(b"P6\n2\n255\n" + bytes(6))


def test_decode_rejects_unknown_magic():
    with pytest.raises(DecodeError):
        decode_image(b"GIF89a....")
    with pytest.raises(DecodeError):
        decode_image(b"")


def test_decode_rejects_corrupt_png():
    good = encode_png(RasterImage(np.zeros((4, 4, 3))))
    with pytest.raises(DecodeError):
        decode_image(good[:20])


def test_load_image_missing_file(tmp_path):
    with pytest.raises(DecodeError):
        load_image(tmp_path / "nope.ppm")


def test_encode_ppm_is_deterministic():
    rng = np.random.default_rng(3)
    img = RasterImage(rng.random((5, 5, 3)))
    assert encode_ppm(img) == encode_ppm(img)
