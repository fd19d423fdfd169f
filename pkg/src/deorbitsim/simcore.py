"""Two-body orbital propagation and rigid-body attitude kinematics.

Deterministic fixed-step integration: the same initial state and input
sequence reproduce bit-identical trajectories. Translational state lives in
an Earth-centered inertial (ECI) frame in km and km/s; attitude is a unit
quaternion mapping ECI coordinates into body coordinates plus body rates in
deg/s (roll, pitch, yaw about body X/Y/Z).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import quat
from .errors import GeometryError

# Interactive loop runs at 50 Hz; headless batches may use the coarser step.
DT_INTERACTIVE = 0.02
DT_HEADLESS = 0.1


@dataclass(frozen=True)
class OrbitEnv:
    """Spherical-Earth environment constants."""

    mu: float = 398600.4418          # km^3/s^2
    earth_radius: float = 6371.0     # km
    earth_spin_rate: float = 7.2921159e-5  # rad/s about inertial +Z
    altitude_nominal: float = 400.0  # km

    def __post_init__(self):
        if self.mu <= 0 or self.earth_radius <= 0 or self.altitude_nominal <= 0:
            raise ValueError("OrbitEnv requires positive mu, earth_radius, altitude")


@dataclass(frozen=True)
class EciState:
    """Translational state: position (km), velocity (km/s), time (s)."""

    position: np.ndarray
    velocity: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "position", np.asarray(self.position, dtype=float))
        object.__setattr__(self, "velocity", np.asarray(self.velocity, dtype=float))

    @property
    def radius(self) -> float:
        return float(np.linalg.norm(self.position))


@dataclass(frozen=True)
class AttitudeState:
    """Rotational state: ECI->body quaternion (scalar-first) and body rates.

    omega is in deg/s about body X (roll), Y (pitch), Z (yaw).
    """

    q: np.ndarray
    omega: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        object.__setattr__(self, "q", np.asarray(self.q, dtype=float))
        object.__setattr__(self, "omega", np.asarray(self.omega, dtype=float))


@dataclass(frozen=True)
class EulerError:
    """3-2-1 intrinsic decomposition of the reference->body rotation, deg."""

    yaw: float
    pitch: float
    roll: float


def gravity_accel(position: np.ndarray, env: OrbitEnv) -> np.ndarray:
    """Central gravitational acceleration -mu*r/|r|^3 in km/s^2."""
    r = np.asarray(position, dtype=float)
    r2 = float(r @ r)
    if r2 == 0.0:
        raise GeometryError("gravity undefined at the origin")
    return (-env.mu / (r2 * math.sqrt(r2))) * r


def circular_init(env: OrbitEnv, altitude: float) -> EciState:
    """Circular equatorial orbit: position on +X, velocity along +Y."""
    if altitude <= 0:
        raise ValueError("altitude must be positive")
    r = env.earth_radius + altitude
    speed = math.sqrt(env.mu / r)
    return EciState(np.array([r, 0.0, 0.0]), np.array([0.0, speed, 0.0]), t=0.0)


def orbital_period(env: OrbitEnv, altitude: float) -> float:
    r = env.earth_radius + altitude
    return 2.0 * math.pi * math.sqrt(r**3 / env.mu)


def rk4_step(state: EciState, env: OrbitEnv, dt: float) -> EciState:
    """One classical RK4 step of the two-body equations.

    Unrolled to scalar arithmetic: this sits in the 50 Hz loop and in the
    full-orbit conservation checks, where numpy per-call overhead dominates.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    mu = env.mu
    rx, ry, rz = state.position
    vx, vy, vz = state.velocity

    def accel(px, py, pz):
        r2 = px * px + py * py + pz * pz
        f = -mu / (r2 * math.sqrt(r2))
        return f * px, f * py, f * pz

    ax1, ay1, az1 = accel(rx, ry, rz)
    h = 0.5 * dt
    ax2, ay2, az2 = accel(rx + h * vx, ry + h * vy, rz + h * vz)
    v2x, v2y, v2z = vx + h * ax1, vy + h * ay1, vz + h * az1
    ax3, ay3, az3 = accel(rx + h * v2x, ry + h * v2y, rz + h * v2z)
    v3x, v3y, v3z = vx + h * ax2, vy + h * ay2, vz + h * az2
    ax4, ay4, az4 = accel(rx + dt * v3x, ry + dt * v3y, rz + dt * v3z)
    v4x, v4y, v4z = vx + dt * ax3, vy + dt * ay3, vz + dt * az3

    s = dt / 6.0
    pos = np.array(
        [
            rx + s * (vx + 2.0 * (v2x + v3x) + v4x),
            ry + s * (vy + 2.0 * (v2y + v3y) + v4y),
            rz + s * (vz + 2.0 * (v2z + v3z) + v4z),
        ]
    )
    vel = np.array(
        [
            vx + s * (ax1 + 2.0 * (ax2 + ax3) + ax4),
            vy + s * (ay1 + 2.0 * (ay2 + ay3) + ay4),
            vz + s * (az1 + 2.0 * (az2 + az3) + az4),
        ]
    )
    return EciState(pos, vel, t=state.t + dt)


def integrate_attitude(att: AttitudeState, dt: float) -> AttitudeState:
    """Advance q by the body rates over dt (exact map for constant omega)."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    wx, wy, wz = att.omega
    w = math.sqrt(wx * wx + wy * wy + wz * wz)
    if w == 0.0:
        return AttitudeState(quat.normalize(att.q), att.omega)
    angle = math.radians(w) * dt
    dq = quat.frame_rotation(np.array([wx, wy, wz]), angle)
    return AttitudeState(quat.normalize(quat.mul(dq, att.q)), att.omega)


def specific_energy(state: EciState, env: OrbitEnv) -> float:
    """v^2/2 - mu/r, conserved by two-body motion."""
    v2 = float(state.velocity @ state.velocity)
    return 0.5 * v2 - env.mu / state.radius


def lvlh_frame(state: EciState) -> np.ndarray:
    """LVLH basis as columns (expressed in ECI): X along-track, Z nadir.

    +Z points to Earth center, +Y along the negative orbit normal, +X
    completes the right-handed triad (prograde for circular orbits).
    """
    r = state.position
    v = state.velocity
    h = np.cross(r, v)
    hn = float(np.linalg.norm(h))
    if float(np.linalg.norm(r)) == 0.0 or float(np.linalg.norm(v)) == 0.0 or hn < 1e-12:
        raise GeometryError("LVLH frame undefined: r and v zero or parallel")
    z = -r / np.linalg.norm(r)
    y = -h / hn
    x = np.cross(y, z)
    return np.column_stack([x, y, z])


def deorbit_reference(state: EciState) -> np.ndarray:
    """Reference attitude quaternion for the de-orbit burn.

    Body +X points retrograde (front-camera boresight along -v), body +Z
    points to nadir (bottom-camera boresight). For non-circular states the
    retrograde axis is exact and nadir is orthogonalized against it.
    """
    r = state.position
    v = state.velocity
    vn = float(np.linalg.norm(v))
    rn = float(np.linalg.norm(r))
    if vn == 0.0 or rn == 0.0:
        raise GeometryError("de-orbit reference undefined: zero r or v")
    x_b = -v / vn
    nadir = -r / rn
    z_b = nadir - float(nadir @ x_b) * x_b
    zn = float(np.linalg.norm(z_b))
    if zn < 1e-12:
        raise GeometryError("de-orbit reference undefined: r parallel to v")
    z_b = z_b / zn
    y_b = np.cross(z_b, x_b)
    # Rows of the ECI->body DCM are the body axes expressed in ECI.
    c = np.array([x_b, y_b, z_b])
    return quat.from_dcm(c)


def attitude_error(q: np.ndarray, q_ref: np.ndarray) -> EulerError:
    """Yaw/pitch/roll of the rotation from reference frame to body frame."""
    rel = quat.mul(q, quat.conj(q_ref))
    yaw, pitch, roll = quat.quat_to_euler321(rel)
    return EulerError(yaw=yaw, pitch=pitch, roll=roll)


def apply_euler_offset(q_ref: np.ndarray, yaw: float, pitch: float, roll: float) -> np.ndarray:
    """Compose q_ref with an intrinsic yaw/pitch/roll offset (degrees)."""
    return quat.mul(quat.euler321_to_quat(yaw, pitch, roll), q_ref)
