"""Layer parameter containers.

All arithmetic is float64 by contract: the gradient checks that gate this
package are only meaningful at double precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..errors import ShapeError


class LayerKind(Enum):
    CONV = "conv"
    DENSE = "dense"


@dataclass
class LayerParams:
    """Weights + bias for one conv or dense layer.

    Conv weights are [C_out, C_in, k, k] (square kernels); dense weights are
    [D_out, D_in]. Bias length always equals the leading output extent.
    """

    kind: LayerKind
    weights: np.ndarray
    bias: np.ndarray
    stride: int = 1
    padding: int = 0

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=np.float64)
        self.bias = np.asarray(self.bias, dtype=np.float64)
        if self.kind is LayerKind.CONV:
            if self.weights.ndim != 4 or self.weights.shape[2] != self.weights.shape[3]:
                raise ShapeError(f"conv weights must be [C_out, C_in, k, k], got {self.weights.shape}")
            if self.stride < 1 or self.padding < 0:
                raise ShapeError("conv needs stride >= 1 and padding >= 0")
        else:
            if self.weights.ndim != 2:
                raise ShapeError(f"dense weights must be [D_out, D_in], got {self.weights.shape}")
        if self.bias.shape != (self.weights.shape[0],):
            raise ShapeError(
                f"bias shape {self.bias.shape} does not match output extent {self.weights.shape[0]}"
            )


@dataclass
class GradientStore:
    """Per-layer gradients, shape-congruent with the owning LayerParams."""

    weights: np.ndarray
    bias: np.ndarray

    def __iadd__(self, other: "GradientStore") -> "GradientStore":
        self.weights += other.weights
        self.bias += other.bias
        return self


def zero_gradients(params: dict[str, LayerParams]) -> dict[str, GradientStore]:
    return {
        name: GradientStore(np.zeros_like(p.weights), np.zeros_like(p.bias))
        for name, p in params.items()
    }


def he_conv(rng: np.random.Generator, c_out: int, c_in: int, k: int,
            stride: int = 1, padding: int = 0) -> LayerParams:
    fan_in = c_in * k * k
    w = rng.normal(0.0, np.sqrt(2.0 / fan_in), size=(c_out, c_in, k, k))
    return LayerParams(LayerKind.CONV, w, np.zeros(c_out), stride, padding)


def he_dense(rng: np.random.Generator, d_out: int, d_in: int) -> LayerParams:
    w = rng.normal(0.0, np.sqrt(2.0 / d_in), size=(d_out, d_in))
    return LayerParams(LayerKind.DENSE, w, np.zeros(d_out))
