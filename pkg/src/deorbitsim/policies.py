"""Scripted pilot policies for headless benchmarking.

Both policies are deliberately simple proportional pilots that consume only
the view-limited cues in ViewObservation, mirroring how the two external
views are actually flown:

* Bottom view: center the Earth disk (pitch/roll), then align the ground
  flow to its reference direction (yaw). No waiting is required.
* Front view: level the horizon arc and hold the reference horizon
  elevation, then hold attitude hands-off for an observation window and
  convert the accumulated horizon-roll drift into a yaw correction.
  Repeat until the trial succeeds.

One policy instance drives one trial; construct a fresh instance per run.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .control import StickInput
from .viewport import View, ViewObservation, wrap_angle_deg


def _clamp(v: float, lo: float = -1.0, hi: float = 1.0) -> float:
    return lo if v < lo else hi if v > hi else v


@dataclass(frozen=True)
class BottomGains:
    center_gain: float = 0.3        # stick per deg of disk-center offset
    flow_gain: float = 0.3          # stick per deg of flow-direction error
    align_enter: float = 0.5        # deg: offset below which yaw alignment runs
    flow_reference: float = 0.0     # deg: flow direction in de-orbit attitude
    search_stick: float = 0.5


class BottomViewPolicy:
    """Center the disk, then null the ground-flow direction error."""

    def __init__(self, gains: BottomGains | None = None):
        self.gains = gains or BottomGains()
        self.aligning = False

    def __call__(self, obs: ViewObservation) -> StickInput:
        if obs.view != View.BOTTOM:
            raise ValueError("bottom policy requires the BOTTOM view")
        g = self.gains
        if not obs.earth_visible:
            self.aligning = False
            return StickInput(y=g.search_stick, t=obs.t)
        az, el = obs.disk_center_offset
        roll = _clamp(-g.center_gain * az)
        pitch = _clamp(g.center_gain * el)
        offset = math.hypot(az, el)
        if offset <= g.align_enter:
            self.aligning = True
        elif offset > 10.0 * g.align_enter:
            self.aligning = False
        yaw = 0.0
        if self.aligning and obs.ground_flow_direction is not None:
            yaw = _clamp(g.flow_gain * wrap_angle_deg(obs.ground_flow_direction - g.flow_reference))
        return StickInput(x=roll, y=pitch, z=yaw, t=obs.t)


class _FrontMode(enum.Enum):
    LEVEL = "LEVEL"
    OBSERVE = "OBSERVE"
    CORRECT = "CORRECT"


@dataclass(frozen=True)
class FrontGains:
    level_gain: float = 0.3         # stick per deg of tilt / elevation error
    level_band: float = 0.3         # deg: leveled when both cues are inside
    level_dwell: float = 6.0        # s of leveled flight before observing
    observe_window: float = 20.0    # s hands-off drift measurement
    yaw_gain: float = 0.8           # fraction of the estimated yaw corrected
    orbit_rate: float = 0.064925    # deg/s, briefed for the 400 km task
    full_rate: float = 3.0          # deg/s at full stick, briefed
    min_correction: float = 0.2     # deg: smaller corrections are skipped
    search_stick: float = 0.5


class FrontViewPolicy:
    """Level the horizon, then hold-and-observe to infer the yaw error."""

    def __init__(self, gains: FrontGains | None = None):
        self.gains = gains or FrontGains()
        self.mode = _FrontMode.LEVEL
        self.level_since: float | None = None
        self.observe_start: float | None = None
        self.tilt_at_start: float = 0.0
        self.correct_until: float = 0.0
        self.correct_stick: float = 0.0

    def __call__(self, obs: ViewObservation) -> StickInput:
        if obs.view != View.FRONT:
            raise ValueError("front policy requires the FRONT view")
        g = self.gains
        if not obs.earth_visible:
            self.mode = _FrontMode.LEVEL
            self.level_since = None
            return StickInput(y=g.search_stick, t=obs.t)

        tilt = obs.horizon_arc_tilt
        el_err = obs.horizon_elevation - (obs.disk_angular_radius - 90.0)

        if self.mode == _FrontMode.OBSERVE:
            if obs.t - self.observe_start >= g.observe_window:
                drift = wrap_angle_deg(tilt - self.tilt_at_start)
                rate = drift / (obs.t - self.observe_start)
                yaw_est = -math.degrees(
                    math.asin(_clamp(rate / g.orbit_rate))
                )
                correction = -g.yaw_gain * yaw_est
                if abs(correction) < g.min_correction:
                    self.mode = _FrontMode.LEVEL
                    self.level_since = None
                else:
                    self.mode = _FrontMode.CORRECT
                    self.correct_stick = math.copysign(1.0, correction)
                    self.correct_until = obs.t + abs(correction) / g.full_rate
            else:
                return StickInput(t=obs.t)

        if self.mode == _FrontMode.CORRECT:
            if obs.t < self.correct_until:
                return StickInput(z=self.correct_stick, t=obs.t)
            self.mode = _FrontMode.LEVEL
            self.level_since = None

        # LEVEL: proportional trim on the two visible cues.
        roll = _clamp(-g.level_gain * tilt)
        pitch = _clamp(g.level_gain * el_err)
        if abs(tilt) <= g.level_band and abs(el_err) <= g.level_band:
            if self.level_since is None:
                self.level_since = obs.t
            elif obs.t - self.level_since >= g.level_dwell:
                self.mode = _FrontMode.OBSERVE
                self.observe_start = obs.t
                self.tilt_at_start = tilt
                self.level_since = None
                return StickInput(t=obs.t)
        else:
            self.level_since = None
        return StickInput(x=roll, y=pitch, t=obs.t)


def make_policy(view: View):
    return BottomViewPolicy() if view == View.BOTTOM else FrontViewPolicy()
