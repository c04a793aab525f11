"""The scoring network: residual trunk -> spatial pyramid pool -> shared
dense layer -> two logistic heads (overall score; six attribute scores).

The trunk never sees a resized image: any input at or above the minimum
side runs through unchanged, and the pyramid pool produces the fixed-length
vector the dense layers need. Images are converted to the configured color
space and normalized channel-wise into [0, 1] before entering the stem.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from ..errors import ImageTooSmallError, ShapeError
from ..imagecore import Colorspace, RasterImage, convert
from ..nn import (
    GradientStore,
    LayerParams,
    conv2d,
    conv2d_backward,
    dense,
    dense_backward,
    he_conv,
    he_dense,
    load_checkpoint,
    logistic,
    logistic_backward,
    relu,
    relu_backward,
    residual_backward,
    residual_forward,
    save_checkpoint,
    spp_backward,
    spp_pool,
)
from .config import HeadsMode, NetworkConfig
from .scores import ATTRIBUTES, AestheticScores


def image_to_input(img: RasterImage, colorspace: Colorspace) -> np.ndarray:
    """Convert to the model color space and normalize to [3, H, W] in [0, 1]."""
    converted = convert(img, colorspace)
    px = converted.pixels
    if colorspace is Colorspace.HSV:
        px = px / np.array([360.0, 1.0, 1.0])
    elif colorspace is Colorspace.LAB:
        px = (px + np.array([0.0, 128.0, 128.0])) / np.array([100.0, 255.0, 255.0])
    return np.ascontiguousarray(px.transpose(2, 0, 1))


def init_params(cfg: NetworkConfig) -> dict[str, LayerParams]:
    """Seeded He initialization of every layer, in a fixed insertion order."""
    rng = np.random.default_rng(cfg.seed)
    c1, c2 = cfg.stage_channels
    params: dict[str, LayerParams] = {}
    params["stem"] = he_conv(rng, c1, 3, 3, stride=2, padding=1)
    params["block1.conv1"] = he_conv(rng, c1, c1, 3, padding=1)
    params["block1.conv2"] = he_conv(rng, c1, c1, 3, padding=1)
    params["block2.conv1"] = he_conv(rng, c2, c1, 3, stride=2, padding=1)
    params["block2.conv2"] = he_conv(rng, c2, c2, 3, padding=1)
    params["block2.skip"] = he_conv(rng, c2, c1, 1, stride=2, padding=0)
    params["block3.conv1"] = he_conv(rng, c2, c2, 3, padding=1)
    params["block3.conv2"] = he_conv(rng, c2, c2, 3, padding=1)
    params["shared"] = he_dense(rng, cfg.shared_dim, cfg.spp_dim)
    params["overall.fc1"] = he_dense(rng, cfg.head_hidden, cfg.shared_dim)
    params["overall.fc2"] = he_dense(rng, 1, cfg.head_hidden)
    params["attrs.fc1"] = he_dense(rng, cfg.head_hidden, cfg.shared_dim)
    params["attrs.fc2"] = he_dense(rng, len(ATTRIBUTES), cfg.head_hidden)
    return params


class ScoringNetwork:
    """Parameters + config; forward/backward over single [3, H, W] inputs."""

    def __init__(self, cfg: NetworkConfig, params: dict[str, LayerParams] | None = None):
        self.cfg = cfg
        self.params = params if params is not None else init_params(cfg)

    # -- persistence ------------------------------------------------------

    def save(self, path: str | Path):
        save_checkpoint(path, self.cfg.to_dict(), self.params)

    @classmethod
    def load(cls, path: str | Path) -> "ScoringNetwork":
        config, params = load_checkpoint(path)
        return cls(NetworkConfig.from_dict(config), params)

    # -- forward ----------------------------------------------------------

    def trunk_forward(self, x: np.ndarray):
        p = self.params
        stem_pre = conv2d(x, p["stem"])
        stem_out = relu(stem_pre)
        b1_out, b1_cache = residual_forward(stem_out, p["block1.conv1"], p["block1.conv2"])
        b2_out, b2_cache = residual_forward(
            b1_out, p["block2.conv1"], p["block2.conv2"], p["block2.skip"]
        )
        b3_out, b3_cache = residual_forward(b2_out, p["block3.conv1"], p["block3.conv2"])
        cache = {
            "x": x,
            "stem_pre": stem_pre,
            "stem_out": stem_out,
            "b1": b1_cache,
            "b2": b2_cache,
            "b3": b3_cache,
        }
        return b3_out, cache

    def head_forward(self, fm: np.ndarray):
        """From feature map [C, h, w] to (overall, attrs, cache)."""
        if fm.shape[0] != self.cfg.feature_channels:
            raise ShapeError(
                f"feature map has {fm.shape[0]} channels, "
                f"model expects {self.cfg.feature_channels}"
            )
        p = self.params
        vec = spp_pool(fm, self.cfg.spp_levels)
        shared_pre = dense(vec, p["shared"])
        shared_out = relu(shared_pre)

        o_h_pre = dense(shared_out, p["overall.fc1"])
        o_h = relu(o_h_pre)
        o_logit = dense(o_h, p["overall.fc2"])
        overall = logistic(o_logit)

        a_h_pre = dense(shared_out, p["attrs.fc1"])
        a_h = relu(a_h_pre)
        a_logit = dense(a_h, p["attrs.fc2"])
        attrs = logistic(a_logit)

        cache = {
            "fm": fm,
            "vec": vec,
            "shared_pre": shared_pre,
            "shared_out": shared_out,
            "o_h_pre": o_h_pre,
            "o_h": o_h,
            "overall": overall,
            "a_h_pre": a_h_pre,
            "a_h": a_h,
            "attrs": attrs,
        }
        return float(overall[0]), attrs.copy(), cache

    def forward(self, x: np.ndarray):
        """Full pass from a [3, H, W] input; returns (overall, attrs, cache)."""
        fm, trunk_cache = self.trunk_forward(x)
        overall, attrs, head_cache = self.head_forward(fm)
        return overall, attrs, {"trunk": trunk_cache, "head": head_cache}

    # -- backward ---------------------------------------------------------

    def head_backward(self, cache: dict, d_overall: float, d_attrs: np.ndarray):
        """Returns (grads, d_feature_map) for the SPP + dense section."""
        p = self.params
        grads: dict[str, GradientStore] = {}

        d_o_logit = logistic_backward(cache["overall"], np.array([d_overall]))
        d_o_h, grads["overall.fc2"] = dense_backward(cache["o_h"], p["overall.fc2"], d_o_logit)
        d_o_h_pre = relu_backward(cache["o_h_pre"], d_o_h)
        d_shared_o, grads["overall.fc1"] = dense_backward(
            cache["shared_out"], p["overall.fc1"], d_o_h_pre
        )

        d_a_logit = logistic_backward(cache["attrs"], np.asarray(d_attrs, dtype=np.float64))
        d_a_h, grads["attrs.fc2"] = dense_backward(cache["a_h"], p["attrs.fc2"], d_a_logit)
        d_a_h_pre = relu_backward(cache["a_h_pre"], d_a_h)
        d_shared_a, grads["attrs.fc1"] = dense_backward(
            cache["shared_out"], p["attrs.fc1"], d_a_h_pre
        )

        d_shared_out = d_shared_o + d_shared_a
        d_shared_pre = relu_backward(cache["shared_pre"], d_shared_out)
        d_vec, grads["shared"] = dense_backward(cache["vec"], p["shared"], d_shared_pre)

        d_fm = spp_backward(cache["fm"], self.cfg.spp_levels, d_vec)
        return grads, d_fm

    def trunk_backward(self, cache: dict, d_fm: np.ndarray):
        p = self.params
        grads: dict[str, GradientStore] = {}

        d_b2, g3 = residual_backward(cache["b3"], p["block3.conv1"], p["block3.conv2"], None, d_fm)
        grads["block3.conv1"], grads["block3.conv2"] = g3["conv1"], g3["conv2"]

        d_b1, g2 = residual_backward(
            cache["b2"], p["block2.conv1"], p["block2.conv2"], p["block2.skip"], d_b2
        )
        grads["block2.conv1"], grads["block2.conv2"] = g2["conv1"], g2["conv2"]
        grads["block2.skip"] = g2["skip"]

        d_stem_out, g1 = residual_backward(
            cache["b1"], p["block1.conv1"], p["block1.conv2"], None, d_b1
        )
        grads["block1.conv1"], grads["block1.conv2"] = g1["conv1"], g1["conv2"]

        d_stem_pre = relu_backward(cache["stem_pre"], d_stem_out)
        _, grads["stem"] = conv2d_backward(cache["x"], p["stem"], d_stem_pre)
        return grads

    def backward(self, cache: dict, d_overall: float, d_attrs: np.ndarray):
        """Gradients for every parameter given dL/d(overall), dL/d(attrs)."""
        grads, d_fm = self.head_backward(cache["head"], d_overall, d_attrs)
        if "trunk" in cache and cache["trunk"] is not None:
            grads.update(self.trunk_backward(cache["trunk"], d_fm))
        return grads

    # -- scoring ----------------------------------------------------------

    def check_input_size(self, img: RasterImage):
        side = self.cfg.min_input_side
        if img.width < side or img.height < side:
            raise ImageTooSmallError(
                f"scoring needs at least {side}x{side}, got {img.width}x{img.height}"
            )

    def predict(self, img: RasterImage) -> AestheticScores:
        self.check_input_size(img)
        x = image_to_input(img, self.cfg.colorspace)
        overall, attrs, _ = self.forward(x)
        return AestheticScores(overall, dict(zip(ATTRIBUTES, (float(a) for a in attrs))))

    def predict_features(self, fm: np.ndarray) -> AestheticScores:
        """Score a precomputed feature map (external-extractor emulation)."""
        overall, attrs, _ = self.head_forward(fm)
        return AestheticScores(overall, dict(zip(ATTRIBUTES, (float(a) for a in attrs))))


def forward_score(img: RasterImage, model: ScoringNetwork) -> AestheticScores:
    """Score an image at its original size; deterministic per checkpoint."""
    return model.predict(img)


def multi_task_loss(pred: AestheticScores, target: AestheticScores,
                    weight: float, heads_mode: HeadsMode = HeadsMode.BOTH) -> float:
    """weight * (overall error)^2 + sum of squared attribute errors."""
    if weight <= 1.0:
        raise ValueError("overall loss weight must be > 1")
    loss = weight * (pred.overall - target.overall) ** 2
    if heads_mode is HeadsMode.BOTH:
        loss += sum(
            (pred.attributes[k] - target.attributes[k]) ** 2 for k in ATTRIBUTES
        )
    return float(loss)


def loss_and_gradients(pred_overall: float, pred_attrs: np.ndarray,
                       target_overall: float, target_attrs: np.ndarray,
                       weight: float, heads_mode: HeadsMode):
    """Array-level loss plus dL/d(overall), dL/d(attrs) for training."""
    d_overall = 2.0 * weight * (pred_overall - target_overall)
    loss = weight * (pred_overall - target_overall) ** 2
    if heads_mode is HeadsMode.BOTH:
        diff = pred_attrs - target_attrs
        loss += float(diff @ diff)
        d_attrs = 2.0 * diff
    else:
        d_attrs = np.zeros_like(pred_attrs)
    return float(loss), d_overall, d_attrs
