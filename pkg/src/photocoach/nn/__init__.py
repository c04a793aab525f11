"""Minimal float64 tensor stack with explicit forward/backward passes."""

from .checkpoint import (
    decode_checkpoint,
    encode_checkpoint,
    load_checkpoint,
    save_checkpoint,
)
from .ops import (
    conv2d,
    conv2d_backward,
    conv_output_shape,
    dense,
    dense_backward,
    logistic,
    logistic_backward,
    relu,
    relu_backward,
    residual_backward,
    residual_block,
    residual_forward,
)
from .optim import MomentumSgd, sgd_step
from .params import (
    GradientStore,
    LayerKind,
    LayerParams,
    he_conv,
    he_dense,
    zero_gradients,
)
from .spp import DEFAULT_LEVELS, spp_backward, spp_output_length, spp_pool

__all__ = [
    "DEFAULT_LEVELS",
    "GradientStore",
    "LayerKind",
    "LayerParams",
    "MomentumSgd",
    "conv2d",
    "conv2d_backward",
    "conv_output_shape",
    "decode_checkpoint",
    "dense",
    "dense_backward",
    "encode_checkpoint",
    "he_conv",
    "he_dense",
    "load_checkpoint",
    "logistic",
    "logistic_backward",
    "relu",
    "relu_backward",
    "residual_backward",
    "residual_block",
    "residual_forward",
    "save_checkpoint",
    "sgd_step",
    "spp_backward",
    "spp_output_length",
    "spp_pool",
    "zero_gradients",
]
