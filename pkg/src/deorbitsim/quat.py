"""Unit-quaternion and small-vector helpers.

Quaternions are scalar-first numpy arrays [w, x, y, z]. Throughout the
package a quaternion is a *coordinate transform*: applying ``rotate(q, v)``
to a vector's source-frame coordinates yields its coordinates in the target
frame. The spacecraft attitude quaternion maps ECI coordinates into body
coordinates; the relative quaternion ``mul(q, conj(q_ref))`` maps reference
frame coordinates into body coordinates.

Euler angles use the 3-2-1 intrinsic sequence (yaw about Z, then pitch
about the new Y, then roll about the new X), in degrees.
"""

from __future__ import annotations

import math

import numpy as np

IDENTITY = np.array([1.0, 0.0, 0.0, 0.0])


def normalize(q: np.ndarray) -> np.ndarray:
    n = math.sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3])
    if n == 0.0:
        raise ValueError("cannot normalize zero quaternion")
    return q / n


def mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Hamilton product a*b (apply b first, then a, as coordinate maps)."""
    aw, ax, ay, az = a
    bw, bx, by, bz = b
    return np.array(
        [
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        ]
    )


def conj(q: np.ndarray) -> np.ndarray:
    return np.array([q[0], -q[1], -q[2], -q[3]])


def rotate(q: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Apply q as a coordinate transform to the 3-vector v."""
    w, x, y, z = q
    vx, vy, vz = v[0], v[1], v[2]
    # q * (0,v) * conj(q), expanded
    tx = 2.0 * (y * vz - z * vy)
    ty = 2.0 * (z * vx - x * vz)
    tz = 2.0 * (x * vy - y * vx)
    return np.array(
        [
            vx + w * tx + (y * tz - z * ty),
            vy + w * ty + (z * tx - x * tz),
            vz + w * tz + (x * ty - y * tx),
        ]
    )


def to_dcm(q: np.ndarray) -> np.ndarray:
    """3x3 direction cosine matrix C with C @ v_source = v_target."""
    w, x, y, z = q
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
        ]
    )


def from_dcm(c: np.ndarray) -> np.ndarray:
    """Quaternion of a proper rotation matrix (Shepperd's method)."""
    tr = c[0, 0] + c[1, 1] + c[2, 2]
    if tr >= c[0, 0] and tr >= c[1, 1] and tr >= c[2, 2]:
        w = 0.5 * math.sqrt(max(1.0 + tr, 0.0))
        f = 0.25 / w
        q = np.array(
            [w, f * (c[2, 1] - c[1, 2]), f * (c[0, 2] - c[2, 0]), f * (c[1, 0] - c[0, 1])]
        )
    elif c[0, 0] >= c[1, 1] and c[0, 0] >= c[2, 2]:
        x = 0.5 * math.sqrt(max(1.0 + c[0, 0] - c[1, 1] - c[2, 2], 0.0))
        f = 0.25 / x
        q = np.array(
            [f * (c[2, 1] - c[1, 2]), x, f * (c[0, 1] + c[1, 0]), f * (c[0, 2] + c[2, 0])]
        )
    elif c[1, 1] >= c[2, 2]:
        y = 0.5 * math.sqrt(max(1.0 - c[0, 0] + c[1, 1] - c[2, 2], 0.0))
        f = 0.25 / y
        q = np.array(
            [f * (c[0, 2] - c[2, 0]), f * (c[0, 1] + c[1, 0]), y, f * (c[1, 2] + c[2, 1])]
        )
    else:
        z = 0.5 * math.sqrt(max(1.0 - c[0, 0] - c[1, 1] + c[2, 2], 0.0))
        f = 0.25 / z
        q = np.array(
            [f * (c[1, 0] - c[0, 1]), f * (c[0, 2] + c[2, 0]), f * (c[1, 2] + c[2, 1]), z]
        )
    if q[0] < 0.0:
        q = -q
    return normalize(q)


def frame_rotation(axis: np.ndarray, angle_rad: float) -> np.ndarray:
    """Coordinate transform for a frame rotated by +angle about axis.

    Rotating the *frame* by +angle makes vector coordinates rotate by
    -angle, so this is the conjugate of the usual axis-angle quaternion.
    """
    ax = np.asarray(axis, dtype=float)
    n = math.sqrt(ax[0] ** 2 + ax[1] ** 2 + ax[2] ** 2)
    if n == 0.0:
        raise ValueError("rotation axis must be non-zero")
    h = -0.5 * angle_rad
    s = math.sin(h) / n
    return np.array([math.cos(h), ax[0] * s, ax[1] * s, ax[2] * s])


def euler321_to_quat(yaw_deg: float, pitch_deg: float, roll_deg: float) -> np.ndarray:
    """Frame transform for intrinsic yaw (Z), pitch (Y), roll (X), degrees."""
    qz = frame_rotation(np.array([0.0, 0.0, 1.0]), math.radians(yaw_deg))
    qy = frame_rotation(np.array([0.0, 1.0, 0.0]), math.radians(pitch_deg))
    qx = frame_rotation(np.array([1.0, 0.0, 0.0]), math.radians(roll_deg))
    return mul(qx, mul(qy, qz))


def quat_to_euler321(q: np.ndarray) -> tuple[float, float, float]:
    """(yaw, pitch, roll) degrees of the 3-2-1 intrinsic decomposition.

    yaw in (-180, 180], pitch in [-90, 90], roll in (-180, 180]. At the
    pitch = +/-90 singularity roll is set to 0 and yaw absorbs the
    remaining rotation about the vertical.
    """
    c = to_dcm(q)
    s_pitch = -c[0, 2]
    if s_pitch > 1.0:
        s_pitch = 1.0
    elif s_pitch < -1.0:
        s_pitch = -1.0
    # Gimbal lock: only the yaw/roll combination is observable; report it
    # entirely as yaw with roll = 0 (recomposition reproduces the rotation).
    if abs(s_pitch) >= 1.0 - 1e-12:
        pitch = math.copysign(90.0, s_pitch)
        yaw = math.degrees(math.atan2(-c[1, 0], c[1, 1]))
        return _wrap180(yaw), pitch, 0.0
    yaw = math.degrees(math.atan2(c[0, 1], c[0, 0]))
    pitch = math.degrees(math.asin(s_pitch))
    roll = math.degrees(math.atan2(c[1, 2], c[2, 2]))
    return _wrap180(yaw), pitch, _wrap180(roll)


def _wrap180(angle_deg: float) -> float:
    """Wrap to (-180, 180]."""
    a = math.fmod(angle_deg, 360.0)
    if a > 180.0:
        a -= 360.0
    elif a <= -180.0:
        a += 360.0
    return a


def angle_between(u: np.ndarray, v: np.ndarray) -> float:
    """Angle between two vectors in degrees, robust near 0 and 180."""
    un = np.linalg.norm(u)
    vn = np.linalg.norm(v)
    if un == 0.0 or vn == 0.0:
        raise ValueError("angle undefined for zero vector")
    # atan2 form avoids acos precision loss at the ends of the range
    cross = np.cross(u, v)
    return math.degrees(math.atan2(np.linalg.norm(cross), float(np.dot(u, v))))
