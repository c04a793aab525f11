"""Deterministic single-example training loop with momentum SGD.

Everything random flows from one generator seeded with cfg.seed: parameter
initialization (own generator, same seed), the train/validation split, and
every epoch's reshuffle. Two runs with the same seed and manifest produce
bit-identical checkpoints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from ..errors import EmptyDatasetError, PhotoCoachError
from ..nn import MomentumSgd
from .config import NetworkConfig
from .dataset import ManifestRecord, TrainExample, load_manifest, prepare_example, split_records
from .metrics import EvaluationReport, evaluate_predictions
from .network import ScoringNetwork, loss_and_gradients


@dataclass
class TrainingReport:
    epochs_run: int
    epoch_losses: list[float]
    train_size: int
    val_size: int
    skipped: list[str] = field(default_factory=list)
    validation: EvaluationReport | None = None

    @property
    def final_loss(self) -> float:
        return self.epoch_losses[-1] if self.epoch_losses else float("nan")


def _prepare_all(records: list[ManifestRecord], net: ScoringNetwork,
                 skipped: list[str]) -> list[TrainExample]:
    examples = []
    for rec in records:
        try:
            examples.append(prepare_example(rec, net))
        except PhotoCoachError as exc:
            skipped.append(f"{rec.path}: {exc}")
    return examples


def _forward_example(net: ScoringNetwork, ex: TrainExample):
    if ex.is_features:
        overall, attrs, head_cache = net.head_forward(ex.x)
        return overall, attrs, {"head": head_cache}
    return net.forward(ex.x)


def train_network(manifest: str | Path, cfg: NetworkConfig,
                  stop_loss: float | None = None,
                  on_epoch: Callable[[int, float], None] | None = None):
    """Train from a manifest; returns (network, report)."""
    records = load_manifest(manifest)
    return train_on_records(records, cfg, stop_loss=stop_loss, on_epoch=on_epoch)


def train_on_records(records: list[ManifestRecord], cfg: NetworkConfig,
                     stop_loss: float | None = None,
                     on_epoch: Callable[[int, float], None] | None = None):
    rng = np.random.default_rng(cfg.seed)
    train_recs, val_recs = split_records(records, rng, cfg.train_fraction)

    net = ScoringNetwork(cfg)
    skipped: list[str] = []
    train_ex = _prepare_all(train_recs, net, skipped)
    val_ex = _prepare_all(val_recs, net, skipped)
    if not train_ex:
        raise EmptyDatasetError("no readable training examples after the split")

    opt = MomentumSgd(cfg.lr, cfg.momentum)
    epoch_losses: list[float] = []
    epochs_run = 0
    for epoch in range(cfg.epochs):
        order = rng.permutation(len(train_ex))
        total = 0.0
        for idx in order:
            ex = train_ex[idx]
            overall, attrs, cache = _forward_example(net, ex)
            loss, d_overall, d_attrs = loss_and_gradients(
                overall, attrs, ex.target_overall, ex.target_attrs,
                cfg.loss_weight_overall, cfg.heads_mode,
            )
            grads = net.backward(cache, d_overall, d_attrs)
            opt.step(net.params, grads)
            total += loss
        mean_loss = total / len(train_ex)
        epoch_losses.append(mean_loss)
        epochs_run = epoch + 1
        if on_epoch is not None:
            on_epoch(epochs_run, mean_loss)
        if stop_loss is not None and mean_loss <= stop_loss:
            break

    report = TrainingReport(
        epochs_run=epochs_run,
        epoch_losses=epoch_losses,
        train_size=len(train_ex),
        val_size=len(val_ex),
        skipped=skipped,
        validation=evaluate_examples(net, val_ex) if val_ex else None,
    )
    return net, report


def evaluate_examples(net: ScoringNetwork, examples: list[TrainExample]) -> EvaluationReport:
    pred_o, pred_a, tgt_o, tgt_a = [], [], [], []
    for ex in examples:
        overall, attrs, _ = _forward_example(net, ex)
        pred_o.append(overall)
        pred_a.append(attrs)
        tgt_o.append(ex.target_overall)
        tgt_a.append(ex.target_attrs)
    return evaluate_predictions(pred_o, np.stack(pred_a), tgt_o, np.stack(tgt_a))


def evaluate_manifest(net: ScoringNetwork, manifest: str | Path):
    """Evaluate a checkpointed model over every readable manifest row."""
    records = load_manifest(manifest)
    skipped: list[str] = []
    examples = _prepare_all(records, net, skipped)
    if not examples:
        raise EmptyDatasetError("no readable examples in manifest")
    return evaluate_examples(net, examples), skipped
