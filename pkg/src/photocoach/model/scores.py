"""Score container: one overall value plus six named attribute values.

All values live in [0, 1]; UIs show round(100 * value). The attribute set
is closed and ordered; that order is also the manifest CSV column order.
"""

from __future__ import annotations

from dataclasses import dataclass

ATTRIBUTES = (
    "balanced_elements",
    "color_harmony",
    "object_emphasis",
    "good_lighting",
    "rule_of_thirds",
    "vivid_color",
)


def display_score(value: float) -> int:
    """Map a [0, 1] score to the 0-100 integer shown to users."""
    return int(round(100.0 * value))


@dataclass(frozen=True)
class AestheticScores:
    overall: float
    attributes: dict[str, float]

    def __post_init__(self):
        if set(self.attributes) != set(ATTRIBUTES):
            raise ValueError(
                f"attributes must be exactly {sorted(ATTRIBUTES)}, "
                f"got {sorted(self.attributes)}"
            )
        for name, value in self.all_scores().items():
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"score {name}={value} outside [0, 1]")
        # canonical attribute order regardless of input order
        object.__setattr__(
            self, "attributes", {k: float(self.attributes[k]) for k in ATTRIBUTES}
        )

    def all_scores(self) -> dict[str, float]:
        """Overall first, then attributes in canonical order."""
        return {"overall": self.overall, **self.attributes}

    def display(self) -> dict[str, int]:
        return {k: display_score(v) for k, v in self.all_scores().items()}

    def ranked(self) -> list[tuple[str, float]]:
        """All seven scores sorted best-first; ties keep canonical order."""
        items = list(self.all_scores().items())
        return sorted(items, key=lambda kv: -kv[1])
