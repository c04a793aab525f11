"""Forward/backward primitives: convolution, dense, ReLU, logistic,
residual blocks.

Convolution uses the cross-correlation convention. Every `*_backward`
returns gradients that the test suite checks against central finite
differences; keep any change here in lockstep with those checks.
"""

from __future__ import annotations

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from ..errors import ImageTooSmallError, ShapeError
from .params import GradientStore, LayerKind, LayerParams


def _require_kind(p: LayerParams, kind: LayerKind):
    if p.kind is not kind:
        raise ShapeError(f"expected {kind.value} params, got {p.kind.value}")


def conv_output_shape(input_shape, p: LayerParams):
    c_in, h, w = input_shape
    c_out, c_in_w, k, _ = p.weights.shape
    if c_in != c_in_w:
        raise ShapeError(f"input has {c_in} channels, kernel expects {c_in_w}")
    h_out = (h + 2 * p.padding - k) // p.stride + 1
    w_out = (w + 2 * p.padding - k) // p.stride + 1
    if h_out < 1 or w_out < 1:
        raise ImageTooSmallError(
            f"conv output would be empty for input {h}x{w}, kernel {k}, "
            f"stride {p.stride}, padding {p.padding}"
        )
    return c_out, h_out, w_out


def _conv_windows(x: np.ndarray, p: LayerParams):
    k = p.weights.shape[2]
    padded = np.pad(x, ((0, 0), (p.padding, p.padding), (p.padding, p.padding)))
    win = sliding_window_view(padded, (k, k), axis=(1, 2))
    return padded, win[:, :: p.stride, :: p.stride]


def conv2d(x: np.ndarray, p: LayerParams) -> np.ndarray:
    """Cross-correlate [C_in, H, W] with [C_out, C_in, k, k] + bias."""
    _require_kind(p, LayerKind.CONV)
    conv_output_shape(x.shape, p)
    _, win = _conv_windows(x, p)
    return np.einsum("oikl,ihwkl->ohw", p.weights, win, optimize=True) + p.bias[:, None, None]


def conv2d_backward(x: np.ndarray, p: LayerParams, upstream: np.ndarray):
    """Gradients w.r.t. input, weights, bias given upstream dL/dout."""
    _require_kind(p, LayerKind.CONV)
    out_shape = conv_output_shape(x.shape, p)
    if upstream.shape != out_shape:
        raise ShapeError(f"upstream grad shape {upstream.shape} != output shape {out_shape}")

    padded, win = _conv_windows(x, p)
    grad_w = np.einsum("ohw,ihwkl->oikl", upstream, win, optimize=True)
    grad_b = upstream.sum(axis=(1, 2))

    k, s = p.weights.shape[2], p.stride
    _, h_out, w_out = out_shape
    contrib = np.einsum("ohw,oikl->ihwkl", upstream, p.weights, optimize=True)
    grad_pad = np.zeros_like(padded)
    for a in range(k):
        for b in range(k):
            grad_pad[:, a : a + s * h_out : s, b : b + s * w_out : s] += contrib[:, :, :, a, b]
    pd = p.padding
    grad_x = grad_pad[:, pd : pd + x.shape[1], pd : pd + x.shape[2]]
    return grad_x, GradientStore(grad_w, grad_b)


def dense(x: np.ndarray, p: LayerParams) -> np.ndarray:
    _require_kind(p, LayerKind.DENSE)
    if x.shape != (p.weights.shape[1],):
        raise ShapeError(f"dense input shape {x.shape} != ({p.weights.shape[1]},)")
    return p.weights @ x + p.bias


def dense_backward(x: np.ndarray, p: LayerParams, upstream: np.ndarray):
    _require_kind(p, LayerKind.DENSE)
    if upstream.shape != (p.weights.shape[0],):
        raise ShapeError(f"upstream grad shape {upstream.shape} != ({p.weights.shape[0]},)")
    grad_w = np.outer(upstream, x)
    grad_x = p.weights.T @ upstream
    return grad_x, GradientStore(grad_w, upstream.copy())


def relu(x: np.ndarray) -> np.ndarray:
    return np.maximum(x, 0.0)


def relu_backward(x: np.ndarray, upstream: np.ndarray) -> np.ndarray:
    # subgradient 0 at exactly 0
    return upstream * (x > 0.0)


def logistic(x: np.ndarray) -> np.ndarray:
    # split by sign so exp never overflows
    out = np.empty_like(x, dtype=np.float64)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def logistic_backward(y: np.ndarray, upstream: np.ndarray) -> np.ndarray:
    """Backward through logistic given its forward output y."""
    return upstream * y * (1.0 - y)


def residual_forward(x: np.ndarray, p1: LayerParams, p2: LayerParams,
                     skip: LayerParams | None = None):
    """ReLU(skip(x) + conv2(ReLU(conv1(x)))), identity skip by default.

    Returns (output, cache) where the cache feeds residual_backward.
    """
    h1 = conv2d(x, p1)
    a1 = relu(h1)
    h2 = conv2d(a1, p2)
    sk = x if skip is None else conv2d(x, skip)
    if sk.shape != h2.shape:
        raise ShapeError(f"skip shape {sk.shape} != branch shape {h2.shape}")
    pre = sk + h2
    return relu(pre), (x, h1, a1, pre)


def residual_block(x: np.ndarray, p1: LayerParams, p2: LayerParams,
                   skip: LayerParams | None = None) -> np.ndarray:
    out, _ = residual_forward(x, p1, p2, skip)
    return out


def residual_backward(cache, p1: LayerParams, p2: LayerParams,
                      skip: LayerParams | None, upstream: np.ndarray):
    """Returns (grad_x, grads) with grads keyed 'conv1'/'conv2'/'skip'."""
    x, h1, a1, pre = cache
    if upstream.shape != pre.shape:
        raise ShapeError(f"upstream grad shape {upstream.shape} != output shape {pre.shape}")
    d_pre = relu_backward(pre, upstream)
    da1, g2 = conv2d_backward(a1, p2, d_pre)
    dh1 = relu_backward(h1, da1)
    dx_branch, g1 = conv2d_backward(x, p1, dh1)
    grads = {"conv1": g1, "conv2": g2}
    if skip is None:
        dx_skip = d_pre
    else:
        dx_skip, g_skip = conv2d_backward(x, skip, d_pre)
        grads["skip"] = g_skip
    return dx_branch + dx_skip, grads
