"""Classic momentum SGD.

Update rule per parameter tensor: v <- momentum * v - lr * g; w <- w + v.
Training owns the parameters single-threaded, so updates mutate in place.
"""

from __future__ import annotations

import numpy as np

from ..errors import TrainingDivergedError
from .params import GradientStore, LayerParams


def sgd_step(param: np.ndarray, grad: np.ndarray, velocity: np.ndarray,
             lr: float, momentum: float):
    """One momentum update on a single tensor; returns (param, velocity)."""
    if lr <= 0.0:
        raise ValueError("lr must be > 0")
    if not 0.0 <= momentum < 1.0:
        raise ValueError("momentum must be in [0, 1)")
    if not np.all(np.isfinite(grad)):
        raise TrainingDivergedError("non-finite gradient")
    velocity *= momentum
    velocity -= lr * grad
    param += velocity
    return param, velocity


class MomentumSgd:
    """Holds per-tensor velocity state across steps."""

    def __init__(self, lr: float, momentum: float = 0.0):
        if lr <= 0.0:
            raise ValueError("lr must be > 0")
        if not 0.0 <= momentum < 1.0:
            raise ValueError("momentum must be in [0, 1)")
        self.lr = lr
        self.momentum = momentum
        self._velocity: dict[str, GradientStore] = {}

    def step(self, params: dict[str, LayerParams], grads: dict[str, GradientStore]):
        for name, p in params.items():
            g = grads[name]
            if name not in self._velocity:
                self._velocity[name] = GradientStore(
                    np.zeros_like(p.weights), np.zeros_like(p.bias)
                )
            v = self._velocity[name]
            sgd_step(p.weights, g.weights, v.weights, self.lr, self.momentum)
            sgd_step(p.bias, g.bias, v.bias, self.lr, self.momentum)
