"""photocoach: aesthetic photo scoring, shooting guidance, and a small
community service, built on a from-scratch float64 neural network that
scores images at their native size."""

__version__ = "0.1.0"

from . import errors, guidance, imagecore, model, service, study
from .model import AestheticScores, NetworkConfig, ScoringNetwork, forward_score

__all__ = [
    "AestheticScores",
    "NetworkConfig",
    "ScoringNetwork",
    "errors",
    "forward_score",
    "guidance",
    "imagecore",
    "model",
    "service",
    "study",
    "__version__",
]
