"""I-VT fixation detection and saccade statistics from gaze direction data.

Angular velocity between consecutive valid samples is the change in gaze
angle divided by the time increment. Samples slower than the velocity
threshold are fixations; maximal runs of successive fixation samples merge
into one event. Invalid samples (blinks) are dropped before velocity
computation and gaps longer than the blink gap split fixation runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DataError

DEFAULT_VELOCITY_THRESHOLD = 30.0  # deg/s
MAX_SAMPLE_GAP = 0.1  # s; longer gaps split fixation runs


@dataclass(frozen=True)
class GazeSample:
    t: float
    direction: np.ndarray
    pupil_diameter: float = 0.0
    valid: bool = True

    def __post_init__(self):
        d = np.asarray(self.direction, dtype=float)
        n = float(np.linalg.norm(d))
        if n == 0.0:
            raise DataError("gaze direction must be non-zero")
        object.__setattr__(self, "direction", d / n)


@dataclass(frozen=True)
class FixationEvent:
    start: float
    end: float
    centroid: np.ndarray

    def __post_init__(self):
        if self.end <= self.start:
            raise DataError("fixation end must follow start")
        object.__setattr__(self, "centroid", np.asarray(self.centroid, dtype=float))

    @property
    def duration(self) -> float:
        return self.end - self.start


def _valid_arrays(samples: list[GazeSample]) -> tuple[np.ndarray, np.ndarray]:
    kept = [s for s in samples if s.valid]
    t = np.array([s.t for s in kept])
    if len(t) >= 2:
        dts = np.diff(t)
        if np.any(dts == 0.0):
            raise DataError("duplicate gaze timestamps")
        if np.any(dts < 0.0):
            raise DataError("gaze samples out of time order")
    d = np.array([s.direction for s in kept]) if kept else np.empty((0, 3))
    return t, d


def _pair_velocities(t: np.ndarray, d: np.ndarray) -> np.ndarray:
    dots = np.clip(np.einsum("ij,ij->i", d[:-1], d[1:]), -1.0, 1.0)
    angles = np.degrees(np.arccos(dots))
    return angles / np.diff(t)


def gaze_angular_velocity(samples: list[GazeSample]) -> np.ndarray:
    """deg/s between each consecutive pair of valid samples."""
    t, d = _valid_arrays(samples)
    if len(t) < 2:
        raise DataError("need at least two valid gaze samples")
    return _pair_velocities(t, d)


def detect_fixations(
    samples: list[GazeSample],
    threshold: float = DEFAULT_VELOCITY_THRESHOLD,
    max_gap: float = MAX_SAMPLE_GAP,
) -> list[FixationEvent]:
    """Velocity-threshold (I-VT) fixation events, successive ones merged.

    A pair of samples is a fixation pair when its angular velocity is below
    the threshold and its time gap is at most max_gap; a maximal run of
    consecutive fixation pairs becomes one event spanning the run, with the
    centroid being the normalized mean of the member directions.
    """
    t, d = _valid_arrays(samples)
    if len(t) < 2:
        return []
    v = _pair_velocities(t, d)
    slow = (v < threshold) & (np.diff(t) <= max_gap)

    events: list[FixationEvent] = []
    i = 0
    n = len(slow)
    while i < n:
        if not slow[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and slow[j + 1]:
            j += 1
        centroid = d[i : j + 2].mean(axis=0)
        norm = float(np.linalg.norm(centroid))
        if norm == 0.0:
            centroid = d[i]
        else:
            centroid = centroid / norm
        events.append(FixationEvent(start=float(t[i]), end=float(t[j + 1]), centroid=centroid))
        i = j + 1
    return events


def fixation_metrics(
    events: list[FixationEvent], task_duration: float
) -> tuple[float, float | None]:
    """(fixation rate in 1/s, mean fixation duration in s or None)."""
    if task_duration <= 0:
        raise DataError("task duration must be positive")
    if not events:
        return 0.0, None
    rate = len(events) / task_duration
    mean = sum(e.duration for e in events) / len(events)
    return rate, mean


def saccade_stats(
    samples: list[GazeSample], events: list[FixationEvent]
) -> tuple[float, float] | None:
    """(mean, peak) deg/s over velocity samples outside all fixation events."""
    t, d = _valid_arrays(samples)
    if len(t) < 2:
        return None
    v = _pair_velocities(t, d)
    outside = []
    for k in range(len(v)):
        t0, t1 = t[k], t[k + 1]
        if not any(ev.start <= t0 and t1 <= ev.end for ev in events):
            outside.append(v[k])
    if not outside:
        return None
    arr = np.array(outside)
    return float(arr.mean()), float(arr.max())
