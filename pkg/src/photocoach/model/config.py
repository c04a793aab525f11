"""Network and training configuration.

Defaults describe the desk-scale model: stem conv 3->16 stride 2, residual
stages 16->16, 16->32 (stride 2), 32->32, pyramid levels (4, 2, 1), shared
dense 672->128, and 128->64->1 / 128->64->6 heads behind logistics. The
overall-score loss weight defaults to 6 so the overall term balances the
six attribute terms combined.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from enum import Enum

from ..imagecore import Colorspace


class HeadsMode(Enum):
    BOTH = "both"
    OVERALL_ONLY = "overall_only"


@dataclass(frozen=True)
class NetworkConfig:
    colorspace: Colorspace = Colorspace.HSV
    stage_channels: tuple[int, int] = (16, 32)
    spp_levels: tuple[int, ...] = (4, 2, 1)
    shared_dim: int = 128
    head_hidden: int = 64
    loss_weight_overall: float = 6.0
    heads_mode: HeadsMode = HeadsMode.BOTH
    seed: int = 0
    lr: float = 0.01
    momentum: float = 0.9
    epochs: int = 100
    train_fraction: float = 0.9

    def __post_init__(self):
        if self.loss_weight_overall <= 1.0:
            raise ValueError("loss_weight_overall must be > 1")
        if len(self.stage_channels) != 2 or min(self.stage_channels) < 1:
            raise ValueError("stage_channels must be two positive widths")
        if not self.spp_levels or min(self.spp_levels) < 1:
            raise ValueError("spp_levels must be positive")
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError("train_fraction must be in (0, 1)")
        if self.epochs < 0:
            raise ValueError("epochs must be >= 0")

    @property
    def feature_channels(self) -> int:
        return self.stage_channels[1]

    @property
    def spp_dim(self) -> int:
        return self.feature_channels * sum(n * n for n in self.spp_levels)

    @property
    def min_input_side(self) -> int:
        # two stride-2 stages in front of the pyramid
        return 4 * max(self.spp_levels)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["colorspace"] = self.colorspace.value
        d["heads_mode"] = self.heads_mode.value
        d["stage_channels"] = list(self.stage_channels)
        d["spp_levels"] = list(self.spp_levels)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "NetworkConfig":
        d = dict(d)
        d["colorspace"] = Colorspace(d["colorspace"])
        d["heads_mode"] = HeadsMode(d["heads_mode"])
        d["stage_channels"] = tuple(d["stage_channels"])
        d["spp_levels"] = tuple(d["spp_levels"])
        return cls(**d)
