"""Camera geometry for the two external views and the visible cues.

Cameras are angular (az/el) rather than planar-pinhole: a 145 deg field of
view has no tangent-plane image, while az = atan2(d.right, d.boresight) and
el = atan2(d.up, d.boresight) stay well defined to 180 deg. A direction is
inside the field of view when |az| <= fov_h/2 and |el| <= fov_v/2.

Everything a pilot (or scripted policy) may legally see is packed into
ViewObservation; ground-truth attitude never appears here.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import quat
from .simcore import AttitudeState, EciState, OrbitEnv


class View(str, enum.Enum):
    BOTTOM = "BOTTOM"
    FRONT = "FRONT"

    @classmethod
    def parse(cls, name: str) -> "View":
        try:
            return cls(name.strip().upper())
        except ValueError:
            raise ValueError(f"unknown view {name!r}; expected BOTTOM or FRONT") from None


@dataclass(frozen=True)
class CameraSpec:
    """Body-fixed camera: boresight/up unit vectors and angular FOV (deg)."""

    id: View
    boresight: np.ndarray
    up: np.ndarray
    fov_h: float
    fov_v: float

    def __post_init__(self):
        b = np.asarray(self.boresight, dtype=float)
        u = np.asarray(self.up, dtype=float)
        object.__setattr__(self, "boresight", b / np.linalg.norm(b))
        object.__setattr__(self, "up", u / np.linalg.norm(u))
        if abs(float(self.boresight @ self.up)) > 1e-9:
            raise ValueError("camera up must be orthogonal to boresight")
        if not (0 < self.fov_h <= 180 and 0 < self.fov_v <= 180):
            raise ValueError("fov must be in (0, 180]")

    @property
    def right(self) -> np.ndarray:
        return np.cross(self.boresight, self.up)


#: Nadir-looking wide camera: the whole Earth disk fits in de-orbit attitude.
BOTTOM_CAMERA = CameraSpec(
    View.BOTTOM,
    boresight=np.array([0.0, 0.0, 1.0]),
    up=np.array([1.0, 0.0, 0.0]),
    fov_h=145.0,
    fov_v=145.0,
)

#: Windshield-style camera boresighted retrograde.
FRONT_CAMERA = CameraSpec(
    View.FRONT,
    boresight=np.array([1.0, 0.0, 0.0]),
    up=np.array([0.0, 0.0, -1.0]),
    fov_h=70.0,
    fov_v=70.0,
)


def camera_for(view: View) -> CameraSpec:
    return BOTTOM_CAMERA if view == View.BOTTOM else FRONT_CAMERA


class ViewAngles(NamedTuple):
    az: float
    el: float
    inside: bool


@dataclass(frozen=True)
class ViewObservation:
    """View-limited cues extracted from one camera at one instant.

    Geometric fields are None whenever the Earth is entirely outside the
    field of view (there is nothing to measure them against). The flow
    field is additionally None when the boresight ray misses the surface.
    """

    view: View
    t: float
    earth_visible: bool
    disk_center_offset: tuple[float, float] | None
    disk_angular_radius: float | None
    full_disk_visible: bool
    horizon_arc_tilt: float | None
    horizon_elevation: float | None
    ground_flow_direction: float | None


def horizon_half_angle(altitude: float, env: OrbitEnv) -> float:
    """Angular radius (deg) of the Earth disk seen from the given altitude."""
    if altitude <= 0:
        raise ValueError("altitude must be positive")
    return math.degrees(math.asin(env.earth_radius / (env.earth_radius + altitude)))


def direction_to_view_angles(d: np.ndarray, cam: CameraSpec) -> ViewAngles:
    """Az/el offsets (deg) of a body-frame direction from the boresight."""
    d = np.asarray(d, dtype=float)
    dr = float(d @ cam.right)
    du = float(d @ cam.up)
    db = float(d @ cam.boresight)
    az = math.degrees(math.atan2(dr, db))
    el = math.degrees(math.atan2(du, db))
    inside = abs(az) <= 0.5 * cam.fov_h and abs(el) <= 0.5 * cam.fov_v
    return ViewAngles(az, el, inside)


def _wedge_planes(cam: CameraSpec) -> list[tuple[float, float, float]]:
    """FOV boundary planes in camera (right, up, boresight) coordinates.

    |az| <= a is equivalent to n.d <= 0 for n = (+/-cos a, 0, -sin a); the
    el bound is the same with the up component. Valid for half-angles
    up to 90 deg.
    """
    a = math.radians(0.5 * cam.fov_h)
    b = math.radians(0.5 * cam.fov_v)
    return [
        (math.cos(a), 0.0, -math.sin(a)),
        (-math.cos(a), 0.0, -math.sin(a)),
        (0.0, math.cos(b), -math.sin(b)),
        (0.0, -math.cos(b), -math.sin(b)),
    ]


def _cam_coords(v: np.ndarray, cam: CameraSpec) -> tuple[float, float, float]:
    return (float(v @ cam.right), float(v @ cam.up), float(v @ cam.boresight))


def _perp_basis(c: tuple[float, float, float]) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic orthonormal pair perpendicular to c (camera coords)."""
    cv = np.array(c)
    k = int(np.argmin(np.abs(cv)))
    axis = np.zeros(3)
    axis[k] = 1.0
    e1 = np.cross(cv, axis)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(cv, e1)
    return e1, e2


def _horizon_extent(
    n: tuple[float, float, float],
    c: np.ndarray,
    e1: np.ndarray,
    e2: np.ndarray,
    rho_rad: float,
) -> tuple[float, float, float]:
    """(C, R, phi) so that n.d(t) = C + R*cos(t - phi) on the horizon circle.

    The horizon circle is d(t) = cos(rho) c + sin(rho) (e1 cos t + e2 sin t).
    """
    nv = np.array(n)
    cc = math.cos(rho_rad) * float(nv @ c)
    a = math.sin(rho_rad) * float(nv @ e1)
    b = math.sin(rho_rad) * float(nv @ e2)
    return cc, math.hypot(a, b), math.atan2(b, a)


def _any_horizon_point_in_fov(
    planes: list[tuple[float, float, float]],
    c: np.ndarray,
    rho_rad: float,
) -> bool:
    """Exact test: does any horizon-circle point satisfy all wedge planes?

    Each plane constrains t to a circular arc; the intersection of arcs is
    non-empty iff some arc start lies inside every other arc (or all arcs
    are the full circle).
    """
    e1, e2 = _perp_basis(tuple(c))
    arcs = []  # (start, sweep) with sweep in (0, 2pi]; None entry = empty
    for n in planes:
        cc, r, phi = _horizon_extent(n, c, e1, e2, rho_rad)
        if cc + r <= 0.0:
            arcs.append(None)  # whole circle satisfies this plane
            continue
        if cc - r > 0.0:
            return False  # no horizon point satisfies this plane
        theta = math.acos(max(-1.0, min(1.0, -cc / r)))
        # cos(t - phi) <= -cc/r on [phi + theta, phi + 2pi - theta]
        arcs.append((phi + theta, 2.0 * math.pi - 2.0 * theta))
    bounded = [a for a in arcs if a is not None]
    if not bounded:
        return True
    for start, _ in bounded:
        if all(_in_arc(start, s, w) for s, w in bounded):
            return True
    return False


def _in_arc(t: float, start: float, sweep: float) -> bool:
    return (t - start) % (2.0 * math.pi) <= sweep + 1e-12


def full_disk_visible(
    eci: EciState, att: AttitudeState, cam: CameraSpec, env: OrbitEnv
) -> bool:
    """True iff every point of the horizon circle is inside the FOV."""
    c_cam, rho_rad = _earth_center_in_camera(eci, att, cam, env)
    return _full_disk(cam, c_cam, rho_rad)


def _full_disk(cam: CameraSpec, c_cam: np.ndarray, rho_rad: float) -> bool:
    # max over the circle of n.d is cos(rho) n.c + sin(rho) |n - (n.c)c|;
    # the disk fits iff that maximum is <= 0 for all four boundary planes.
    for n in _wedge_planes(cam):
        nv = np.array(n)
        nc = float(nv @ c_cam)
        perp = math.sqrt(max(0.0, float(nv @ nv) - nc * nc))
        if math.cos(rho_rad) * nc + math.sin(rho_rad) * perp > 0.0:
            return False
    return True


def _earth_center_in_camera(
    eci: EciState, att: AttitudeState, cam: CameraSpec, env: OrbitEnv
) -> tuple[np.ndarray, float]:
    """Earth-center unit direction in camera coords and disk radius (rad)."""
    r = eci.radius
    if r <= env.earth_radius:
        raise ValueError("spacecraft at or below the surface")
    c_eci = -eci.position / r
    c_body = quat.rotate(att.q, c_eci)
    rho_rad = math.asin(env.earth_radius / r)
    return np.array(_cam_coords(c_body, cam)), rho_rad


def observe(
    eci: EciState, att: AttitudeState, cam: CameraSpec, env: OrbitEnv
) -> ViewObservation:
    """Extract every view-limited cue for one camera."""
    c_cam, rho_rad = _earth_center_in_camera(eci, att, cam, env)
    planes = _wedge_planes(cam)

    # Visible iff the boresight looks into the disk or some horizon point
    # lies inside the field of view.
    boresight_off = math.acos(max(-1.0, min(1.0, float(c_cam[2]))))
    visible = boresight_off <= rho_rad or _any_horizon_point_in_fov(
        planes, c_cam, rho_rad
    )
    t = eci.t
    if not visible:
        return ViewObservation(
            view=cam.id,
            t=t,
            earth_visible=False,
            disk_center_offset=None,
            disk_angular_radius=None,
            full_disk_visible=False,
            horizon_arc_tilt=None,
            horizon_elevation=None,
            ground_flow_direction=None,
        )

    az = math.degrees(math.atan2(c_cam[0], c_cam[2]))
    el = math.degrees(math.atan2(c_cam[1], c_cam[2]))

    # Nearest horizon point: tilt the center direction toward the boresight.
    b_cam = np.array([0.0, 0.0, 1.0])
    perp = b_cam - float(b_cam @ c_cam) * c_cam
    pn = float(np.linalg.norm(perp))
    if pn < 1e-12:
        e1, _ = _perp_basis(tuple(c_cam))
        perp = e1
    else:
        perp = perp / pn
    near = math.cos(rho_rad) * c_cam + math.sin(rho_rad) * perp
    horizon_el = math.degrees(math.atan2(float(near[1]), float(near[2])))

    # The horizon chord at the nearest point is perpendicular to the image
    # direction of the Earth center; its tilt is that direction's azimuth
    # from straight-down, so it matches roll error at the reference attitude.
    tilt = math.degrees(math.atan2(float(c_cam[0]), -float(c_cam[1])))

    flow = _ground_flow_direction(eci, att, cam, env)

    return ViewObservation(
        view=cam.id,
        t=t,
        earth_visible=True,
        disk_center_offset=(az, el),
        disk_angular_radius=math.degrees(rho_rad),
        full_disk_visible=_full_disk(cam, c_cam, rho_rad),
        horizon_arc_tilt=tilt,
        horizon_elevation=horizon_el,
        ground_flow_direction=flow,
    )


def _ground_flow_direction(
    eci: EciState, att: AttitudeState, cam: CameraSpec, env: OrbitEnv
) -> float | None:
    """Image-plane direction (deg) of surface-feature motion under the camera.

    Casts the boresight ray onto the spinning sphere; the apparent flow is
    the surface point's inertial velocity minus the spacecraft's, projected
    onto the image plane. 0 deg means features stream toward image-up.
    """
    b_eci = quat.rotate(quat.conj(att.q), cam.boresight)
    p = eci.position
    pd = float(p @ b_eci)
    disc = pd * pd - float(p @ p) + env.earth_radius**2
    if disc < 0.0:
        return None
    s = -pd - math.sqrt(disc)
    if s <= 0.0:
        return None
    surf = p + s * b_eci
    spin = env.earth_spin_rate * np.array([-surf[1], surf[0], 0.0])  # w x P
    flow_eci = spin - eci.velocity
    flow_body = quat.rotate(att.q, flow_eci)
    fr = float(flow_body @ cam.right)
    fu = float(flow_body @ cam.up)
    if fr == 0.0 and fu == 0.0:
        return None
    return math.degrees(math.atan2(fr, fu))


def wrap_angle_deg(a: float) -> float:
    """Wrap an angle difference to (-180, 180]."""
    w = math.fmod(a, 360.0)
    if w > 180.0:
        w -= 360.0
    elif w <= -180.0:
        w += 360.0
    return w
