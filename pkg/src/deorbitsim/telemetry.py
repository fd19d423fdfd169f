"""Per-tick telemetry record and its canonical JSON form.

One frame is recorded per simulation tick; the wire stream decimates these
to the telemetry rate. Serialization must be canonical (sorted keys, floats
via repr) so that a replayed run can be compared bit-for-bit against the
original log.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .control import StickInput
from .simcore import AttitudeState, EciState, EulerError
from .viewport import View, ViewObservation


@dataclass(frozen=True)
class TelemetryFrame:
    tick: int
    t: float
    position: tuple[float, float, float]
    velocity: tuple[float, float, float]
    q: tuple[float, float, float, float]
    omega: tuple[float, float, float]
    stick: tuple[float, float, float]
    fuel: float
    err: EulerError
    obs: ViewObservation
    phase: str


def make_frame(
    tick: int,
    t: float,
    eci: EciState,
    att: AttitudeState,
    stick: StickInput,
    fuel: float,
    err: EulerError,
    obs: ViewObservation,
    phase: str,
) -> TelemetryFrame:
    return TelemetryFrame(
        tick=tick,
        t=t,
        position=tuple(float(x) for x in eci.position),
        velocity=tuple(float(x) for x in eci.velocity),
        q=tuple(float(x) for x in att.q),
        omega=tuple(float(x) for x in att.omega),
        stick=(float(stick.x), float(stick.y), float(stick.z)),
        fuel=float(fuel),
        err=err,
        obs=obs,
        phase=phase,
    )


def obs_to_dict(obs: ViewObservation) -> dict:
    return {
        "view": obs.view.value,
        "t": obs.t,
        "earth_visible": obs.earth_visible,
        "disk_center_offset": list(obs.disk_center_offset)
        if obs.disk_center_offset is not None
        else None,
        "disk_angular_radius": obs.disk_angular_radius,
        "full_disk_visible": obs.full_disk_visible,
        "horizon_arc_tilt": obs.horizon_arc_tilt,
        "horizon_elevation": obs.horizon_elevation,
        "ground_flow_direction": obs.ground_flow_direction,
    }


def obs_from_dict(d: dict) -> ViewObservation:
    off = d.get("disk_center_offset")
    return ViewObservation(
        view=View(d["view"]),
        t=d["t"],
        earth_visible=d["earth_visible"],
        disk_center_offset=tuple(off) if off is not None else None,
        disk_angular_radius=d.get("disk_angular_radius"),
        full_disk_visible=d["full_disk_visible"],
        horizon_arc_tilt=d.get("horizon_arc_tilt"),
        horizon_elevation=d.get("horizon_elevation"),
        ground_flow_direction=d.get("ground_flow_direction"),
    )


def frame_to_dict(frame: TelemetryFrame, include_err: bool = True) -> dict:
    """Plain-JSON form of a frame; err can be withheld for the cockpit wire."""
    d = {
        "tick": frame.tick,
        "t": frame.t,
        "position": list(frame.position),
        "velocity": list(frame.velocity),
        "q": list(frame.q),
        "omega": list(frame.omega),
        "stick": list(frame.stick),
        "fuel": frame.fuel,
        "obs": obs_to_dict(frame.obs),
        "phase": frame.phase,
    }
    if include_err:
        d["err"] = {"yaw": frame.err.yaw, "pitch": frame.err.pitch, "roll": frame.err.roll}
    return d


def frame_from_dict(d: dict) -> TelemetryFrame:
    err = d["err"]
    return TelemetryFrame(
        tick=d["tick"],
        t=d["t"],
        position=tuple(d["position"]),
        velocity=tuple(d["velocity"]),
        q=tuple(d["q"]),
        omega=tuple(d["omega"]),
        stick=tuple(d["stick"]),
        fuel=d["fuel"],
        err=EulerError(yaw=err["yaw"], pitch=err["pitch"], roll=err["roll"]),
        obs=obs_from_dict(d["obs"]),
        phase=d["phase"],
    )


def state_arrays(frame: TelemetryFrame) -> tuple[EciState, AttitudeState]:
    """Rebuild simulation state objects from a frame."""
    eci = EciState(np.array(frame.position), np.array(frame.velocity), t=frame.t)
    att = AttitudeState(np.array(frame.q), np.array(frame.omega))
    return eci, att
