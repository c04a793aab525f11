"""Color space conversions: sRGB <-> HSV and sRGB -> CIELAB.

HSV uses the hexcone model with hue in degrees [0, 360); achromatic pixels
get hue 0 and saturation 0. LAB goes through linear RGB (IEC 61966-2-1
inverse gamma) and CIE XYZ with the D65 white point. The white point is
taken as the row sums of the RGB->XYZ matrix so that sRGB white maps to
exactly L=100, a=b=0.
"""

from __future__ import annotations

import numpy as np

from .raster import Colorspace, RasterImage

# sRGB (Rec. 709 primaries, D65) to XYZ, IEC 61966-2-1 derivation.
_RGB_TO_XYZ = np.array(
    [
        [0.41239079926595934, 0.357584339383878, 0.1804807884018343],
        [0.21263900587151027, 0.715168678767756, 0.07219231536073371],
        [0.01933081871559182, 0.11919477979462598, 0.9505321522496607],
    ]
)
_WHITE_XYZ = _RGB_TO_XYZ.sum(axis=1)

# CIELAB f(t) breakpoints: delta = 6/29.
_LAB_DELTA3 = (6.0 / 29.0) ** 3
_LAB_SLOPE = (29.0 / 6.0) ** 2 / 3.0


def rgb_to_hsv(img: RasterImage) -> RasterImage:
    """Hexcone sRGB -> HSV conversion, hue of achromatic pixels is 0."""
    img.require_colorspace(Colorspace.SRGB)
    r, g, b = (img.pixels[:, :, c] for c in range(3))

    maxc = np.maximum(r, np.maximum(g, b))
    minc = np.minimum(r, np.minimum(g, b))
    delta = maxc - minc

    chroma = delta > 0.0
    safe_delta = np.where(chroma, delta, 1.0)
    hue = np.zeros_like(maxc)
    r_is_max = chroma & (maxc == r)
    g_is_max = chroma & ~r_is_max & (maxc == g)
    b_is_max = chroma & ~r_is_max & ~g_is_max
    hue = np.where(r_is_max, ((g - b) / safe_delta) % 6.0, hue)
    hue = np.where(g_is_max, (b - r) / safe_delta + 2.0, hue)
    hue = np.where(b_is_max, (r - g) / safe_delta + 4.0, hue)
    hue = hue * 60.0
    hue = np.where(hue >= 360.0, hue - 360.0, hue)

    sat = np.where(maxc > 0.0, delta / np.where(maxc > 0.0, maxc, 1.0), 0.0)

    out = np.stack([hue, sat, maxc], axis=2)
    return RasterImage(out, Colorspace.HSV)


def hsv_to_rgb(img: RasterImage) -> RasterImage:
    """Inverse hexcone conversion; exact round trip for in-gamut pixels."""
    img.require_colorspace(Colorspace.HSV)
    h, s, v = (img.pixels[:, :, c] for c in range(3))

    hp = h / 60.0
    c = v * s
    x = c * (1.0 - np.abs(hp % 2.0 - 1.0))
    m = v - c

    sector = np.floor(hp).astype(np.int64) % 6
    zeros = np.zeros_like(c)
    r = np.choose(sector, [c, x, zeros, zeros, x, c])
    g = np.choose(sector, [x, c, c, x, zeros, zeros])
    b = np.choose(sector, [zeros, zeros, x, c, c, x])

    out = np.stack([r + m, g + m, b + m], axis=2)
    out = np.clip(out, 0.0, 1.0)
    return RasterImage(out, Colorspace.SRGB)


def srgb_to_linear(channel: np.ndarray) -> np.ndarray:
    """IEC 61966-2-1 inverse transfer function on [0, 1] values."""
    return np.where(
        channel <= 0.04045,
        channel / 12.92,
        ((channel + 0.055) / 1.055) ** 2.4,
    )


def rgb_to_lab(img: RasterImage) -> RasterImage:
    """sRGB -> linear RGB -> XYZ (D65) -> CIELAB."""
    img.require_colorspace(Colorspace.SRGB)
    linear = srgb_to_linear(img.pixels)

    xyz = linear @ _RGB_TO_XYZ.T
    xyz = xyz / _WHITE_XYZ

    f = np.where(
        xyz > _LAB_DELTA3,
        np.cbrt(xyz),
        _LAB_SLOPE * xyz + 4.0 / 29.0,
    )
    fx, fy, fz = f[:, :, 0], f[:, :, 1], f[:, :, 2]

    lum = 116.0 * fy - 16.0
    a = 500.0 * (fx - fy)
    b = 200.0 * (fy - fz)
    out = np.stack([lum, a, b], axis=2)
    return RasterImage(out, Colorspace.LAB)


def convert(img: RasterImage, target: Colorspace) -> RasterImage:
    """Convert an sRGB image to `target` (identity for SRGB)."""
    if img.colorspace is target:
        return img
    img.require_colorspace(Colorspace.SRGB)
    if target is Colorspace.HSV:
        return rgb_to_hsv(img)
    if target is Colorspace.LAB:
        return rgb_to_lab(img)
    raise ValueError(f"unsupported target colorspace: {target}")
