import numpy as np
import pytest

from conftest import max_rel_err, numeric_gradient
from photocoach.errors import ImageTooSmallError, ShapeError
from photocoach.nn import (
    LayerKind,
    LayerParams,
    conv2d,
    conv2d_backward,
    conv_output_shape,
    dense,
    dense_backward,
    he_conv,
    he_dense,
    logistic,
    logistic_backward,
    relu,
    relu_backward,
    residual_backward,
    residual_block,
    residual_forward,
)


def conv_oracle(x, p):
    """Straight triple-loop convolution, no vectorisation tricks."""
    c_out, c_in, k, _ = p.weights.shape
    s, pad = p.stride, p.padding
    xp = np.pad(x, ((0, 0), (pad, pad), (pad, pad)))
    h_out = (xp.shape[1] - k) // s + 1
    w_out = (xp.shape[2] - k) // s + 1
    out = np.zeros((c_out, h_out, w_out))
    for co in range(c_out):
        for i in range(h_out):
            for j in range(w_out):
                patch = xp[:, i * s:i * s + k, j * s:j * s + k]
                out[co, i, j] = np.sum(patch * p.weights[co]) + p.bias[co]
    return out


@pytest.mark.parametrize("c_in,c_out,k,stride,pad,h,w", [
    (1, 1, 3, 1, 0, 5, 5),
    (2, 3, 3, 1, 1, 6, 7),
    (3, 4, 3, 2, 1, 9, 8),
    (2, 2, 1, 2, 0, 6, 6),
    (3, 5, 5, 1, 2, 8, 8),
])
def test_conv_matches_loop_oracle(c_in, c_out, k, stride, pad, h, w):
    rng = np.random.default_rng(hash((c_in, c_out, k, stride, pad)) % 2**32)
    p = he_conv(rng, c_out, c_in, k, stride, pad)
    p.bias[:] = rng.normal(size=c_out)
    x = rng.normal(size=(c_in, h, w))
    got = conv2d(x, p)
    want = conv_oracle(x, p)
    assert got.shape == want.shape == (c_out,) + conv_output_shape(x.shape, p)[1:]
    assert np.max(np.abs(got - want)) < 1e-12


def test_conv_rejects_channel_mismatch():
    rng = np.random.default_rng(0)
    p = he_conv(rng, 2, 3, 3, padding=1)
    with pytest.raises(ShapeError):
        conv2d(rng.normal(size=(2, 8, 8)), p)


def test_conv_rejects_input_smaller_than_kernel():
    rng = np.random.default_rng(0)
    p = he_conv(rng, 1, 1, 3, padding=0)
    with pytest.raises(ImageTooSmallError):
        conv2d(rng.normal(size=(1, 2, 2)), p)


def test_conv_gradients_match_finite_differences():
    rng = np.random.default_rng(7)
    p = he_conv(rng, 3, 2, 3, stride=2, padding=1)
    x = rng.normal(size=(2, 7, 6))
    upstream = rng.normal(size=conv2d(x, p).shape)

    dx, g = conv2d_backward(x, p, upstream)

    def loss_x():
        return float(np.sum(conv2d(x, p) * upstream))

    assert max_rel_err(dx, numeric_gradient(loss_x, x)) < 1e-6
    assert max_rel_err(g.weights, numeric_gradient(loss_x, p.weights)) < 1e-6
    assert max_rel_err(g.bias, numeric_gradient(loss_x, p.bias)) < 1e-6


def test_dense_matches_matmul_and_gradcheck():
    rng = np.random.default_rng(9)
    p = he_dense(rng, 4, 6)
    p.bias[:] = rng.normal(size=4)
    x = rng.normal(size=6)
    assert np.allclose(dense(x, p), p.weights @ x + p.bias, atol=1e-14)

    upstream = rng.normal(size=4)
    dx, g = dense_backward(x, p, upstream)

    def loss():
        return float(np.sum(dense(x, p) * upstream))

    assert max_rel_err(dx, numeric_gradient(loss, x)) < 1e-7
    assert max_rel_err(g.weights, numeric_gradient(loss, p.weights)) < 1e-7
    assert max_rel_err(g.bias, numeric_gradient(loss, p.bias)) < 1e-7


def test_relu_and_backward():
    x = np.array([-2.0, -0.5, 0.0, 0.5, 3.0])
    assert np.array_equal(relu(x), [0.0, 0.0, 0.0, 0.5, 3.0])
    up = np.ones_like(x)
    assert np.array_equal(relu_backward(x, up), [0.0, 0.0, 0.0, 1.0, 1.0])


def test_logistic_values_and_stability():
    assert logistic(np.array([0.0]))[0] == 0.5
    x = np.array([-1000.0, -50.0, 50.0, 1000.0])
    with np.errstate(over="raise"):
        y = logistic(x)
    assert np.all(y >= 0.0) and np.all(y <= 1.0)
    assert y[0] < 1e-300 or y[0] == 0.0
    assert y[3] == 1.0
    # symmetry: logistic(-x) == 1 - logistic(x)
    z = np.linspace(-5, 5, 21)
    assert np.allclose(logistic(-z), 1.0 - logistic(z), atol=1e-15)


def test_logistic_backward_matches_fd():
    rng = np.random.default_rng(3)
    x = rng.normal(size=10)
    up = rng.normal(size=10)
    y = logistic(x)
    dx = logistic_backward(y, up)

    def loss():
        return float(np.sum(logistic(x) * up))

    assert max_rel_err(dx, numeric_gradient(loss, x)) < 1e-7


def test_residual_identity_skip_forward():
    rng = np.random.default_rng(21)
    p1 = he_conv(rng, 3, 3, 3, stride=1, padding=1)
    p2 = he_conv(rng, 3, 3, 3, stride=1, padding=1)
    x = rng.normal(size=(3, 8, 8))
    out = residual_block(x, p1, p2)
    want = relu(conv2d(relu(conv2d(x, p1)), p2) + x)
    assert np.allclose(out, want, atol=1e-12)


def test_residual_projection_skip_forward():
    rng = np.random.default_rng(22)
    p1 = he_conv(rng, 4, 2, 3, stride=2, padding=1)
    p2 = he_conv(rng, 4, 4, 3, stride=1, padding=1)
    skip = he_conv(rng, 4, 2, 1, stride=2, padding=0)
    x = rng.normal(size=(2, 8, 8))
    out = residual_block(x, p1, p2, skip)
    want = relu(conv2d(relu(conv2d(x, p1)), p2) + conv2d(x, skip))
    assert np.allclose(out, want, atol=1e-12)


@pytest.mark.parametrize("with_skip", [False, True])
def test_residual_backward_gradcheck(with_skip):
    rng = np.random.default_rng(23)
    if with_skip:
        p1 = he_conv(rng, 3, 2, 3, stride=2, padding=1)
        p2 = he_conv(rng, 3, 3, 3, stride=1, padding=1)
        skip = he_conv(rng, 3, 2, 1, stride=2, padding=0)
        x = rng.normal(size=(2, 6, 6))
    else:
        p1 = he_conv(rng, 2, 2, 3, stride=1, padding=1)
        p2 = he_conv(rng, 2, 2, 3, stride=1, padding=1)
        skip = None
        x = rng.normal(size=(2, 6, 6))

    out, cache = residual_forward(x, p1, p2, skip)
    assert np.allclose(out, residual_block(x, p1, p2, skip), atol=1e-14)
    upstream = rng.normal(size=out.shape)
    dx, grads = residual_backward(cache, p1, p2, skip, upstream)

    def loss():
        return float(np.sum(residual_block(x, p1, p2, skip) * upstream))

    assert max_rel_err(dx, numeric_gradient(loss, x)) < 1e-6
    assert max_rel_err(grads["conv1"].weights, numeric_gradient(loss, p1.weights)) < 1e-6
    assert max_rel_err(grads["conv2"].weights, numeric_gradient(loss, p2.weights)) < 1e-6
    if with_skip:
        assert max_rel_err(grads["skip"].weights, numeric_gradient(loss, skip.weights)) < 1e-6
    else:
        assert "skip" not in grads


def test_layer_params_validation():
    with pytest.raises(ShapeError):
        LayerParams(LayerKind.CONV, np.zeros((2, 2, 3, 2)), np.zeros(2))
    with pytest.raises(ShapeError):
        LayerParams(LayerKind.CONV, np.zeros((2, 2, 3, 3)), np.zeros(3))
    with pytest.raises(ShapeError):
        LayerParams(LayerKind.DENSE, np.zeros((2, 3, 4)), np.zeros(2))
    with pytest.raises(ShapeError):
        LayerParams(LayerKind.CONV, np.zeros((2, 2, 3, 3)), np.zeros(2), stride=0)
