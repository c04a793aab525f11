"""Raster representation, color conversion, luminance stats, resampling,
and gradient maps."""

from .color import convert, hsv_to_rgb, rgb_to_hsv, rgb_to_lab, srgb_to_linear
from .gradients import GradientMap, box_blur_3x3, sobel_magnitude
from .io import (
    decode_image,
    encode_png,
    encode_ppm,
    load_image,
    save_png,
    save_ppm,
)
from .raster import Colorspace, RasterImage, constant_image
from .resample import resample_bilinear
from .stats import CLIP_HIGH, CLIP_LOW, LuminanceStats, luma, luma_stats

__all__ = [
    "CLIP_HIGH",
    "CLIP_LOW",
    "Colorspace",
    "GradientMap",
    "LuminanceStats",
    "RasterImage",
    "box_blur_3x3",
    "constant_image",
    "convert",
    "decode_image",
    "encode_png",
    "encode_ppm",
    "hsv_to_rgb",
    "load_image",
    "luma",
    "luma_stats",
    "resample_bilinear",
    "rgb_to_hsv",
    "rgb_to_lab",
    "save_png",
    "save_ppm",
    "sobel_magnitude",
    "srgb_to_linear",
]
