"""Aesthetic scoring model: config, network, datasets, metrics, training."""

from .config import HeadsMode, NetworkConfig
from .dataset import (
    MANIFEST_COLUMNS,
    ManifestRecord,
    TrainExample,
    load_manifest,
    prepare_example,
    split_records,
)
from .metrics import (
    EvaluationReport,
    agreement_above_half,
    average_ranks,
    evaluate_predictions,
    spearman,
)
from .network import (
    ScoringNetwork,
    forward_score,
    image_to_input,
    init_params,
    loss_and_gradients,
    multi_task_loss,
)
from .scores import ATTRIBUTES, AestheticScores, display_score
from .training import (
    TrainingReport,
    evaluate_examples,
    evaluate_manifest,
    train_network,
    train_on_records,
)

__all__ = [
    "ATTRIBUTES",
    "AestheticScores",
    "EvaluationReport",
    "HeadsMode",
    "MANIFEST_COLUMNS",
    "ManifestRecord",
    "NetworkConfig",
    "ScoringNetwork",
    "TrainExample",
    "TrainingReport",
    "agreement_above_half",
    "average_ranks",
    "display_score",
    "evaluate_examples",
    "evaluate_manifest",
    "evaluate_predictions",
    "forward_score",
    "image_to_input",
    "init_params",
    "load_manifest",
    "loss_and_gradients",
    "multi_task_loss",
    "prepare_example",
    "spearman",
    "split_records",
    "train_network",
    "train_on_records",
]
