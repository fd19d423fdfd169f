"""Human-factors analysis pipeline: gaze, EEG, subjective scores, statistics."""

from .eeg import (
    STANDARD_BANDS,
    Band,
    BandSpec,
    EegChannelRecord,
    band_power,
    band_powers,
    engagement_index,
    task_load_index,
)
from .gaze import (
    DEFAULT_VELOCITY_THRESHOLD,
    FixationEvent,
    GazeSample,
    detect_fixations,
    fixation_metrics,
    gaze_angular_velocity,
    saccade_stats,
)
from .scores import SubjectiveSheet, sus_score, tlx_score
from .stats import Observation, StatResult, anova_mixed_2x2, eta_sq_from_f

__all__ = [
    "Band",
    "BandSpec",
    "DEFAULT_VELOCITY_THRESHOLD",
    "EegChannelRecord",
    "FixationEvent",
    "GazeSample",
    "Observation",
    "STANDARD_BANDS",
    "StatResult",
    "SubjectiveSheet",
    "anova_mixed_2x2",
    "band_power",
    "band_powers",
    "detect_fixations",
    "engagement_index",
    "eta_sq_from_f",
    "fixation_metrics",
    "gaze_angular_velocity",
    "saccade_stats",
    "sus_score",
    "task_load_index",
    "tlx_score",
]
