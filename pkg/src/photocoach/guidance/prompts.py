"""Prompt assembly: brightness verdicts, directional nudges, encouragement,
and post-shot improvement suggestions.

Direction tokens name the direction the SUBJECT should move within the
frame: a subject left of its target gets "right". Clients render tokens
verbatim (including as speech), so the vocabulary is closed.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from importlib import resources
from pathlib import Path

from ..errors import ImageTooSmallError, NoSubjectError, PhotoCoachError
from ..imagecore import RasterImage, luma_stats
from ..model.scores import ATTRIBUTES, AestheticScores, display_score
from .rules import (
    AREA_MAX_FRAC,
    AREA_MIN_FRAC,
    POSITION_DEADBAND,
    SUGGESTION_CUTOFF,
    CompositionVerdict,
    match_rules,
    nearest_power_point,
)
from .subject import SubjectRegion, estimate_subject

MEAN_DARK = 0.25
MEAN_BRIGHT = 0.75
CLIPPED_LOW_LIMIT = 0.4
CLIPPED_HIGH_LIMIT = 0.25

BRIGHTNESS_TOKENS = ("too dark", "too bright")
DIRECTION_TOKENS = ("left", "right", "up", "down", "forward", "backward")
ENCOURAGEMENT_TOKENS = ("awesome", "yes", "good shot")


class PromptKind(Enum):
    BRIGHTNESS = "brightness"
    DIRECTION = "direction"
    ENCOURAGEMENT = "encouragement"
    SUGGESTION = "suggestion"


_FIXED_TOKENS = {
    PromptKind.BRIGHTNESS: BRIGHTNESS_TOKENS,
    PromptKind.DIRECTION: DIRECTION_TOKENS,
    PromptKind.ENCOURAGEMENT: ENCOURAGEMENT_TOKENS,
}


@dataclass(frozen=True)
class GuidancePrompt:
    kind: PromptKind
    token: str
    detail: str | None = None

    def __post_init__(self):
        allowed = _FIXED_TOKENS.get(self.kind)
        if allowed is not None and self.token not in allowed:
            raise ValueError(f"{self.token!r} is not a {self.kind.value} token")
        if self.kind is PromptKind.SUGGESTION and not self.token:
            raise ValueError("suggestion prompts need a non-empty id token")

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "token": self.token, "detail": self.detail}


@dataclass(frozen=True)
class SuggestionEntry:
    id: str
    text: str


@dataclass(frozen=True)
class SuggestionCatalog:
    version: int
    entries: dict[str, SuggestionEntry]  # keyed by attribute name

    def __post_init__(self):
        missing = set(ATTRIBUTES) - set(self.entries)
        if missing:
            raise PhotoCoachError(f"suggestion catalog missing attributes: {sorted(missing)}")


def _parse_catalog(raw: dict) -> SuggestionCatalog:
    entries = {
        attr: SuggestionEntry(id=item["id"], text=item["text"])
        for attr, item in raw["suggestions"].items()
    }
    return SuggestionCatalog(version=int(raw["version"]), entries=entries)


@lru_cache(maxsize=1)
def default_catalog() -> SuggestionCatalog:
    raw = json.loads(
        resources.files("photocoach").joinpath("data/suggestions.json").read_text()
    )
    return _parse_catalog(raw)


def load_suggestion_catalog(path: str | Path | None = None) -> SuggestionCatalog:
    """Load a catalog; the packaged default when no path is given."""
    if path is None:
        return default_catalog()
    with open(path) as fh:
        return _parse_catalog(json.load(fh))


def brightness_prompt(img: RasterImage) -> GuidancePrompt | None:
    """Dark is checked before bright; at most one prompt comes back."""
    stats = luma_stats(img)
    if stats.mean < MEAN_DARK or stats.clipped_low_frac > CLIPPED_LOW_LIMIT:
        return GuidancePrompt(
            PromptKind.BRIGHTNESS, "too dark",
            "The scene reads dark. Add light or raise the exposure.",
        )
    if stats.mean > MEAN_BRIGHT or stats.clipped_high_frac > CLIPPED_HIGH_LIMIT:
        return GuidancePrompt(
            PromptKind.BRIGHTNESS, "too bright",
            "The scene reads bright. Lower the exposure or step out of direct light.",
        )
    return None


def direction_prompt(subject: SubjectRegion, verdict: CompositionVerdict) -> GuidancePrompt | None:
    """Size first (forward/backward), then position toward a power point."""
    if subject.area_frac < AREA_MIN_FRAC:
        return GuidancePrompt(
            PromptKind.DIRECTION, "forward",
            "Move closer. The subject fills too little of the frame.",
        )
    if subject.area_frac > AREA_MAX_FRAC:
        return GuidancePrompt(
            PromptKind.DIRECTION, "backward",
            "Step back. The subject fills most of the frame.",
        )
    if verdict.matched:
        return None
    target, distance = nearest_power_point(subject.centroid)
    if distance <= POSITION_DEADBAND:
        return None
    dx = target[0] - subject.centroid[0]
    dy = target[1] - subject.centroid[1]
    if abs(dx) >= abs(dy):
        token = "right" if dx > 0 else "left"
    else:
        token = "down" if dy > 0 else "up"
    return GuidancePrompt(
        PromptKind.DIRECTION, token,
        f"Shift the subject {token} toward a thirds intersection.",
    )


def encouragement_prompt(img: RasterImage) -> GuidancePrompt:
    """Deterministic pick keyed on frame content, so replays are stable."""
    digest = hashlib.sha256(img.content_digest_bytes()).digest()
    token = ENCOURAGEMENT_TOKENS[int.from_bytes(digest[:8], "big") % len(ENCOURAGEMENT_TOKENS)]
    return GuidancePrompt(PromptKind.ENCOURAGEMENT, token, "Nice composition. Take the shot.")


@dataclass(frozen=True)
class FrameAnalysis:
    """Everything one frame evaluation produced, for callers that overlay
    the subject or inspect rule scores alongside the prompts."""

    prompts: tuple[GuidancePrompt, ...]
    subject: SubjectRegion | None
    verdict: CompositionVerdict | None


def analyze_frame(img: RasterImage) -> FrameAnalysis:
    """Per-frame prompts: at most one brightness, one direction, one encouragement.

    A flat or too-small frame is composition-silent: brightness prompts
    still come back, subject and verdict are None.
    """
    prompts: list[GuidancePrompt] = []
    brightness = brightness_prompt(img)
    if brightness is not None:
        prompts.append(brightness)

    verdict = None
    try:
        subject = estimate_subject(img)
    except (NoSubjectError, ImageTooSmallError):
        subject = None
    if subject is not None:
        verdict = match_rules(subject, img)
        direction = direction_prompt(subject, verdict)
        if direction is not None:
            prompts.append(direction)

    if verdict is not None and verdict.matched and brightness is None:
        prompts.append(encouragement_prompt(img))
    return FrameAnalysis(prompts=tuple(prompts), subject=subject, verdict=verdict)


def frame_guidance(img: RasterImage) -> list[GuidancePrompt]:
    """Prompt list only; see analyze_frame for the full picture."""
    return list(analyze_frame(img).prompts)


def suggestions_from_scores(scores: AestheticScores,
                            catalog: SuggestionCatalog | None = None) -> list[GuidancePrompt]:
    """One canned suggestion per attribute whose display score is under the
    cutoff, weakest first."""
    if catalog is None:
        catalog = default_catalog()
    weak = [
        (scores.attributes[name], idx, name)
        for idx, name in enumerate(ATTRIBUTES)
        if display_score(scores.attributes[name]) < SUGGESTION_CUTOFF
    ]
    weak.sort()
    prompts = []
    for _, _, name in weak:
        entry = catalog.entries[name]
        prompts.append(GuidancePrompt(PromptKind.SUGGESTION, entry.id, entry.text))
    return prompts
