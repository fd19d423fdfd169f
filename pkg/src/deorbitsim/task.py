"""De-orbit trial state machine, success detection, and headless runner.

A trial starts at a configured attitude offset from the de-orbit
reference, runs the 4-stage tick (stick -> rate command -> rate tracking
-> attitude/orbit integration), and terminates on success (error inside
tolerance continuously for the hold time) or timeout.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Callable

from .control import ControlConfig, FuelMeter, StickInput, fuel_increment, rate_track_step, stick_to_rate
from .errors import StateError
from .simcore import (
    DT_HEADLESS,
    AttitudeState,
    EciState,
    EulerError,
    OrbitEnv,
    apply_euler_offset,
    attitude_error,
    circular_init,
    deorbit_reference,
    integrate_attitude,
    rk4_step,
)
from .telemetry import TelemetryFrame, make_frame
from .viewport import View, ViewObservation, camera_for, observe


class Phase(str, enum.Enum):
    RUNNING = "RUNNING"
    SUCCEEDED = "SUCCEEDED"
    TIMED_OUT = "TIMED_OUT"


class Cohort(str, enum.Enum):
    PILOT = "PILOT"
    CIVILIAN = "CIVILIAN"

    @classmethod
    def parse(cls, name: str) -> "Cohort":
        try:
            return cls(name.strip().upper())
        except ValueError:
            raise ValueError(f"unknown cohort {name!r}; expected PILOT or CIVILIAN") from None


@dataclass(frozen=True)
class TaskConfig:
    view: View
    initial_offset: EulerError = EulerError(yaw=104.0, pitch=0.0, roll=102.0)
    tolerance_yaw: float = 6.0
    tolerance_pitch: float = 1.0
    tolerance_roll: float = 1.0
    hold_time: float = 5.0
    timeout: float = 600.0
    hud_attitude_visible: bool = False

    def __post_init__(self):
        if min(self.tolerance_yaw, self.tolerance_pitch, self.tolerance_roll) <= 0:
            raise ValueError("tolerances must be positive")
        if self.hold_time < 0:
            raise ValueError("hold_time must be non-negative")
        if self.timeout <= self.hold_time:
            raise ValueError("timeout must exceed hold_time")


@dataclass(frozen=True)
class TrialState:
    phase: Phase
    tick: int
    elapsed: float
    in_tolerance_since: float | None
    fuel: FuelMeter
    eci: EciState
    att: AttitudeState


@dataclass(frozen=True)
class TrialResult:
    view: View
    cohort: Cohort
    completion_time: float
    fuel: float
    success: bool
    input_log_ref: str = ""

    def to_dict(self) -> dict:
        return {
            "view": self.view.value,
            "cohort": self.cohort.value,
            "completion_time": self.completion_time,
            "fuel": self.fuel,
            "success": self.success,
            "input_log_ref": self.input_log_ref,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TrialResult":
        return cls(
            view=View(d["view"]),
            cohort=Cohort(d["cohort"]),
            completion_time=d["completion_time"],
            fuel=d["fuel"],
            success=d["success"],
            input_log_ref=d.get("input_log_ref", ""),
        )


def check_success(err: EulerError, cfg: TaskConfig) -> bool:
    """Inside tolerance, boundaries inclusive."""
    return (
        abs(err.pitch) <= cfg.tolerance_pitch
        and abs(err.roll) <= cfg.tolerance_roll
        and abs(err.yaw) <= cfg.tolerance_yaw
    )


def trial_error(state: TrialState) -> EulerError:
    """Attitude error against the de-orbit reference at the current orbit point."""
    return attitude_error(state.att.q, deorbit_reference(state.eci))


def init_trial(cfg: TaskConfig, env: OrbitEnv) -> TrialState:
    eci = circular_init(env, env.altitude_nominal)
    q_ref = deorbit_reference(eci)
    off = cfg.initial_offset
    q0 = apply_euler_offset(q_ref, off.yaw, off.pitch, off.roll)
    state = TrialState(
        phase=Phase.RUNNING,
        tick=0,
        elapsed=0.0,
        in_tolerance_since=None,
        fuel=FuelMeter(0.0),
        eci=eci,
        att=AttitudeState(q0),
    )
    if check_success(trial_error(state), cfg):
        state = replace(state, in_tolerance_since=0.0)
    return state


def step_trial(
    state: TrialState,
    stick: StickInput,
    cfg: TaskConfig,
    ctrl: ControlConfig,
    env: OrbitEnv,
    dt: float,
) -> TrialState:
    """Advance the trial one tick; raises StateError on terminal trials."""
    if state.phase != Phase.RUNNING:
        raise StateError(f"cannot step a trial in phase {state.phase.value}")
    cmd = stick_to_rate(stick, ctrl)
    omega, alpha = rate_track_step(state.att.omega, cmd, ctrl, dt)
    att = integrate_attitude(AttitudeState(state.att.q, omega), dt)
    fuel = FuelMeter(state.fuel.consumed)
    fuel.add(fuel_increment(alpha, ctrl, dt))

    tick = state.tick + 1
    elapsed = tick * dt
    # tick * dt is the single time source; it avoids the drift of repeated
    # float addition, so the same tick always carries the same timestamp.
    stepped = rk4_step(state.eci, env, dt)
    eci = EciState(stepped.position, stepped.velocity, t=elapsed)
    err = attitude_error(att.q, deorbit_reference(eci))
    if check_success(err, cfg):
        in_tol = state.in_tolerance_since if state.in_tolerance_since is not None else elapsed
    else:
        in_tol = None

    phase = Phase.RUNNING
    if in_tol is not None and elapsed - in_tol >= cfg.hold_time:
        phase = Phase.SUCCEEDED
    elif elapsed >= cfg.timeout:
        phase = Phase.TIMED_OUT

    return TrialState(
        phase=phase,
        tick=tick,
        elapsed=elapsed,
        in_tolerance_since=in_tol,
        fuel=fuel,
        eci=eci,
        att=att,
    )


Policy = Callable[[ViewObservation], StickInput]
FrameSink = Callable[[TelemetryFrame], None]


def result_from_state(
    state: TrialState, cfg: TaskConfig, cohort: Cohort, log_ref: str = ""
) -> TrialResult:
    success = state.phase == Phase.SUCCEEDED
    return TrialResult(
        view=cfg.view,
        cohort=cohort,
        completion_time=state.elapsed if success else cfg.timeout,
        fuel=state.fuel.consumed,
        success=success,
        input_log_ref=log_ref,
    )


def run_headless(
    cfg: TaskConfig,
    policy: Policy,
    env: OrbitEnv | None = None,
    ctrl: ControlConfig | None = None,
    dt: float = DT_HEADLESS,
    cohort: Cohort = Cohort.PILOT,
    on_frame: FrameSink | None = None,
    log_ref: str = "",
) -> TrialResult:
    """Run one trial to a terminal phase under a scripted policy.

    The policy sees only the active camera's ViewObservation, never
    ground-truth state. Every tick produces one TelemetryFrame through
    on_frame, the initial state included.
    """
    env = env or OrbitEnv()
    ctrl = ctrl or ControlConfig()
    cam = camera_for(cfg.view)

    state = init_trial(cfg, env)
    obs = observe(state.eci, state.att, cam, env)
    if on_frame is not None:
        on_frame(build_frame(state, StickInput(), obs))
    while state.phase == Phase.RUNNING:
        stick = policy(obs).clamped()
        state = step_trial(state, stick, cfg, ctrl, env, dt)
        obs = observe(state.eci, state.att, cam, env)
        if on_frame is not None:
            on_frame(build_frame(state, stick, obs))
    return result_from_state(state, cfg, cohort, log_ref)


def build_frame(state: TrialState, stick: StickInput, obs: ViewObservation) -> TelemetryFrame:
    return make_frame(
        tick=state.tick,
        t=state.elapsed,
        eci=state.eci,
        att=state.att,
        stick=stick,
        fuel=state.fuel.consumed,
        err=trial_error(state),
        obs=obs,
        phase=state.phase.value,
    )
