import math

import numpy as np
import pytest

from deorbitsim.analysis import (
    FixationEvent,
    GazeSample,
    detect_fixations,
    fixation_metrics,
    gaze_angular_velocity,
    saccade_stats,
)
from deorbitsim.errors import DataError


def rotating_samples(rate=120.0, duration=1.0, deg_per_sample=0.0, t0=0.0, axis_phase=0.0):
    """Directions rotating about Z by a fixed angle per sample."""
    n = int(round(duration * rate)) + 1
    out = []
    for i in range(n):
        ang = math.radians(deg_per_sample * i + axis_phase)
        out.append(
            GazeSample(t=t0 + i / rate, direction=np.array([math.cos(ang), math.sin(ang), 0.0]))
        )
    return out


def ivt_oracle(samples, threshold=30.0, max_gap=0.1):
    """Independent label-then-merge I-VT implementation (plain loops)."""
    valid = [s for s in samples if s.valid]
    events = []
    run_start = None
    for i in range(len(valid) - 1):
        dt = valid[i + 1].t - valid[i].t
        dot = float(np.dot(valid[i].direction, valid[i + 1].direction))
        dot = max(-1.0, min(1.0, dot))
        vel = math.degrees(math.acos(dot)) / dt
        is_fix = vel < threshold and dt <= max_gap
        if is_fix and run_start is None:
            run_start = i
        if not is_fix and run_start is not None:
            events.append((run_start, i))
            run_start = None
    if run_start is not None:
        events.append((run_start, len(valid) - 1))
    out = []
    for a, b in events:
        dirs = np.array([valid[k].direction for k in range(a, b + 1)])
        centroid = dirs.mean(axis=0)
        n = np.linalg.norm(centroid)
        centroid = centroid / n if n > 0 else dirs[0]
        out.append(FixationEvent(start=valid[a].t, end=valid[b].t, centroid=centroid))
    return out


def random_trace(rng, n_segments=6):
    """Alternating dwell/saccade segments with dropouts and gaps."""
    samples = []
    t = 0.0
    ang = 0.0
    for seg in range(n_segments):
        fast = seg % 2 == 1
        length = int(rng.integers(5, 40))
        step = rng.uniform(1.0, 4.0) if fast else rng.uniform(0.0, 0.2)
        for _ in range(length):
            ang += step
            t += 1.0 / 120.0
            valid = rng.random() > 0.05
            a = math.radians(ang)
            samples.append(
                GazeSample(
                    t=t,
                    direction=np.array([math.cos(a), math.sin(a), 0.0]),
                    valid=bool(valid),
                )
            )
        if rng.random() < 0.3:
            t += rng.uniform(0.15, 0.5)  # blink-sized gap
    return samples


class TestAngularVelocity:
    def test_constant_direction_gives_zeros(self):
        samples = rotating_samples(deg_per_sample=0.0)
        assert np.allclose(gaze_angular_velocity(samples), 0.0)

    def test_one_degree_per_sample_at_120hz(self):
        samples = rotating_samples(deg_per_sample=1.0)
        v = gaze_angular_velocity(samples)
        assert np.allclose(v, 120.0, atol=1e-6)

    def test_antipodal_pair(self):
        samples = [
            GazeSample(t=0.0, direction=np.array([1.0, 0, 0])),
            GazeSample(t=1.0, direction=np.array([-1.0, 0, 0])),
        ]
        assert gaze_angular_velocity(samples)[0] == pytest.approx(180.0, abs=1e-9)

    def test_duplicate_timestamps_rejected(self):
        samples = [
            GazeSample(t=0.0, direction=np.array([1.0, 0, 0])),
            GazeSample(t=0.0, direction=np.array([0.0, 1.0, 0])),
        ]
        with pytest.raises(DataError):
            gaze_angular_velocity(samples)

    def test_invalid_samples_excluded(self):
        samples = rotating_samples(deg_per_sample=0.0, duration=0.5)
        spike = GazeSample(t=samples[10].t + 1e-4, direction=np.array([0.0, 0, 1.0]), valid=False)
        v = gaze_angular_velocity(samples + [spike])
        assert np.allclose(v, 0.0)

    def test_needs_two_valid(self):
        with pytest.raises(DataError):
            gaze_angular_velocity([GazeSample(t=0, direction=np.array([1.0, 0, 0]))])


class TestDetectFixations:
    def test_static_second_is_one_event(self):
        samples = rotating_samples(rate=120.0, duration=1.0, deg_per_sample=0.0)
        events = detect_fixations(samples)
        assert len(events) == 1
        assert events[0].duration == pytest.approx(1.0, abs=1e-9)

    def test_two_dwells_bridged_by_saccade(self):
        dwell1 = rotating_samples(duration=0.5, deg_per_sample=0.0)
        t1 = dwell1[-1].t
        # 200 deg/s bridge: 10 samples at 120 Hz covering ~17 deg
        bridge = rotating_samples(duration=10 / 120, deg_per_sample=200 / 120.0,
                                  t0=t1 + 1 / 120.0)
        t2 = bridge[-1].t
        dwell2 = rotating_samples(duration=0.5, deg_per_sample=0.0, t0=t2 + 1 / 120.0,
                                  axis_phase=45.0)
        events = detect_fixations(dwell1 + bridge + dwell2)
        assert len(events) == 2

    def test_all_fast_gives_no_events(self):
        # 31 deg/s at 120 Hz
        samples = rotating_samples(deg_per_sample=31.0 / 120.0)
        assert detect_fixations(samples) == []

    def test_just_below_threshold_is_fixation(self):
        samples = rotating_samples(deg_per_sample=29.0 / 120.0)
        assert len(detect_fixations(samples)) == 1

    def test_empty_input(self):
        assert detect_fixations([]) == []

    def test_gap_splits_runs(self):
        dwell1 = rotating_samples(duration=0.5)
        dwell2 = rotating_samples(duration=0.5, t0=dwell1[-1].t + 0.2)
        events = detect_fixations(dwell1 + dwell2)
        assert len(events) == 2

    def test_events_disjoint_and_ordered(self, rng):
        for _ in range(50):
            events = detect_fixations(random_trace(rng))
            for a, b in zip(events, events[1:]):
                assert a.end <= b.start

    def test_matches_independent_oracle(self, rng):
        for _ in range(200):
            samples = random_trace(rng)
            got = detect_fixations(samples)
            want = ivt_oracle(samples)
            assert len(got) == len(want)
            for g, w in zip(got, want):
                assert g.start == w.start
                assert g.end == w.end
                assert np.allclose(g.centroid, w.centroid, atol=1e-12)


class TestFixationMetrics:
    def test_rate(self):
        events = [FixationEvent(i, i + 0.5, np.array([1.0, 0, 0])) for i in range(10)]
        rate, _ = fixation_metrics(events, 100.0)
        assert rate == pytest.approx(0.1)

    def test_mean_duration(self):
        events = [
            FixationEvent(0.0, 1.0, np.array([1.0, 0, 0])),
            FixationEvent(2.0, 5.0, np.array([1.0, 0, 0])),
        ]
        _, mean = fixation_metrics(events, 10.0)
        assert mean == pytest.approx(2.0)

    def test_no_events(self):
        rate, mean = fixation_metrics([], 10.0)
        assert rate == 0.0 and mean is None

    def test_bad_duration(self):
        with pytest.raises(DataError):
            fixation_metrics([], 0.0)


class TestSaccadeStats:
    def test_all_fixation_trace_gives_none(self):
        samples = rotating_samples(deg_per_sample=0.0)
        events = detect_fixations(samples)
        assert saccade_stats(samples, events) is None

    def test_constant_saccade(self):
        samples = rotating_samples(deg_per_sample=200.0 / 120.0, duration=0.2)
        events = detect_fixations(samples)
        mean, peak = saccade_stats(samples, events)
        assert mean == pytest.approx(200.0, rel=1e-6)
        assert peak == pytest.approx(200.0, rel=1e-6)

    def test_matches_brute_force_on_mixed_trace(self, rng):
        for _ in range(30):
            samples = random_trace(rng)
            events = detect_fixations(samples)
            got = saccade_stats(samples, events)
            # brute force: recompute velocities, drop pairs covered by events
            valid = [s for s in samples if s.valid]
            vels = []
            for i in range(len(valid) - 1):
                dot = max(-1.0, min(1.0, float(np.dot(valid[i].direction, valid[i + 1].direction))))
                v = math.degrees(math.acos(dot)) / (valid[i + 1].t - valid[i].t)
                inside = any(e.start <= valid[i].t and valid[i + 1].t <= e.end for e in events)
                if not inside:
                    vels.append(v)
            if not vels:
                assert got is None
            else:
                assert got[0] == pytest.approx(float(np.mean(vels)), rel=1e-12)
                assert got[1] == pytest.approx(float(np.max(vels)), rel=1e-12)
