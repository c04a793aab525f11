"""Real-time shooting guidance: subject detection, composition rules, prompts."""

from .prompts import (
    BRIGHTNESS_TOKENS,
    CLIPPED_HIGH_LIMIT,
    CLIPPED_LOW_LIMIT,
    DIRECTION_TOKENS,
    ENCOURAGEMENT_TOKENS,
    MEAN_BRIGHT,
    MEAN_DARK,
    FrameAnalysis,
    GuidancePrompt,
    PromptKind,
    SuggestionCatalog,
    SuggestionEntry,
    analyze_frame,
    brightness_prompt,
    default_catalog,
    direction_prompt,
    encouragement_prompt,
    frame_guidance,
    load_suggestion_catalog,
    suggestions_from_scores,
)
from .rules import (
    AREA_MAX_FRAC,
    AREA_MIN_FRAC,
    DIAGONAL_MIN_ECCENTRICITY,
    DIAGONAL_TOLERANCE_DEG,
    FRAME_RATIO_DIVISOR,
    FRAME_RING_FRACTION,
    MATCH_THRESHOLD,
    POSITION_DEADBAND,
    POWER_POINTS,
    RULE_PRIORITY,
    SUGGESTION_CUTOFF,
    SYMMETRY_FALLOFF,
    THIRDS_FALLOFF,
    TRIANGLE_BASE_SCALE,
    CompositionRule,
    CompositionVerdict,
    match_rules,
    nearest_power_point,
)
from .subject import (
    MASK_THRESHOLD,
    MAX_PEAKS,
    MIN_SUBJECT_SIDE,
    PEAK_MIN_SEPARATION,
    SALIENCY_MAX_DIM,
    SubjectRegion,
    estimate_subject,
    saliency_map,
)

__all__ = [
    "AREA_MAX_FRAC",
    "AREA_MIN_FRAC",
    "BRIGHTNESS_TOKENS",
    "CLIPPED_HIGH_LIMIT",
    "CLIPPED_LOW_LIMIT",
    "CompositionRule",
    "CompositionVerdict",
    "DIAGONAL_MIN_ECCENTRICITY",
    "DIAGONAL_TOLERANCE_DEG",
    "DIRECTION_TOKENS",
    "ENCOURAGEMENT_TOKENS",
    "FRAME_RATIO_DIVISOR",
    "FRAME_RING_FRACTION",
    "FrameAnalysis",
    "GuidancePrompt",
    "MASK_THRESHOLD",
    "MATCH_THRESHOLD",
    "MAX_PEAKS",
    "MEAN_BRIGHT",
    "MEAN_DARK",
    "MIN_SUBJECT_SIDE",
    "PEAK_MIN_SEPARATION",
    "POSITION_DEADBAND",
    "POWER_POINTS",
    "PromptKind",
    "RULE_PRIORITY",
    "SALIENCY_MAX_DIM",
    "SUGGESTION_CUTOFF",
    "SYMMETRY_FALLOFF",
    "SubjectRegion",
    "SuggestionCatalog",
    "SuggestionEntry",
    "THIRDS_FALLOFF",
    "TRIANGLE_BASE_SCALE",
    "analyze_frame",
    "brightness_prompt",
    "default_catalog",
    "direction_prompt",
    "encouragement_prompt",
    "estimate_subject",
    "frame_guidance",
    "load_suggestion_catalog",
    "match_rules",
    "nearest_power_point",
    "saliency_map",
    "suggestions_from_scores",
]
