"""Deterministic de-orbit attitude-task simulator and human-factors toolkit."""

from .control import ControlConfig, FuelMeter, StickInput, fuel_increment, rate_track_step, stick_to_rate
from .errors import DataError, GeometryError, LogIntegrityError, StateError
from .seeding import offset_for_seed
from .simcore import (
    AttitudeState,
    EciState,
    EulerError,
    OrbitEnv,
    attitude_error,
    circular_init,
    deorbit_reference,
    gravity_accel,
    integrate_attitude,
    lvlh_frame,
    orbital_period,
    rk4_step,
)
from .task import (
    Cohort,
    Phase,
    TaskConfig,
    TrialResult,
    TrialState,
    check_success,
    init_trial,
    run_headless,
    step_trial,
)
from .policies import BottomViewPolicy, FrontViewPolicy, make_policy
from .sessionlog import replay
from .telemetry import TelemetryFrame
from .viewport import (
    BOTTOM_CAMERA,
    FRONT_CAMERA,
    CameraSpec,
    View,
    ViewObservation,
    camera_for,
    direction_to_view_angles,
    full_disk_visible,
    horizon_half_angle,
    observe,
)

__version__ = "0.1.0"

__all__ = [
    "AttitudeState",
    "BOTTOM_CAMERA",
    "BottomViewPolicy",
    "CameraSpec",
    "Cohort",
    "ControlConfig",
    "DataError",
    "EciState",
    "EulerError",
    "FRONT_CAMERA",
    "FrontViewPolicy",
    "FuelMeter",
    "GeometryError",
    "LogIntegrityError",
    "OrbitEnv",
    "Phase",
    "StateError",
    "StickInput",
    "TaskConfig",
    "TelemetryFrame",
    "TrialResult",
    "TrialState",
    "View",
    "ViewObservation",
    "attitude_error",
    "camera_for",
    "check_success",
    "circular_init",
    "deorbit_reference",
    "direction_to_view_angles",
    "fuel_increment",
    "full_disk_visible",
    "gravity_accel",
    "horizon_half_angle",
    "init_trial",
    "integrate_attitude",
    "lvlh_frame",
    "make_policy",
    "observe",
    "offset_for_seed",
    "orbital_period",
    "rate_track_step",
    "replay",
    "rk4_step",
    "run_headless",
    "step_trial",
    "stick_to_rate",
]
