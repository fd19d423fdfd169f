/**
 * Pure pixel renderer for the two external views.
 *
 * Every rendered quantity derives from one TelemetryFrame: pixel
 * directions come from the camera's angular (az/el) model, are rotated
 * into the inertial frame by the frame's attitude quaternion, and are
 * ray-cast against the spinning spherical Earth. No physics happens here,
 * so replaying a telemetry log through this renderer reproduces the live
 * visuals exactly.
 *
 * The wide 145 deg bottom view cannot use a planar projection; pixels map
 * linearly to az/el angles (a fisheye-style mapping) and each direction is
 * d ~ (tan az, tan el, 1) in camera coordinates, matching how the
 * simulator defines az/el. The 70 deg front view uses the same mapping,
 * which stays close to a standard perspective at that field of view.
 */

import { conj, dot, normalize, rotate, type Quat, type Vec3 } from "./geometry.js";
import type { TelemetryFrame, ViewId } from "./protocol.js";

export const EARTH_RADIUS_KM = 6371.0;
export const EARTH_SPIN_RATE = 7.2921159e-5; // rad/s about inertial +Z

export interface CameraSpec {
  id: ViewId;
  boresight: Vec3;
  up: Vec3;
  right: Vec3;
  fovH: number;
  fovV: number;
}

export const BOTTOM_CAMERA: CameraSpec = {
  id: "BOTTOM",
  boresight: [0, 0, 1],
  up: [1, 0, 0],
  right: [0, 1, 0],
  fovH: 145,
  fovV: 145,
};

export const FRONT_CAMERA: CameraSpec = {
  id: "FRONT",
  boresight: [1, 0, 0],
  up: [0, 0, -1],
  right: [0, 1, 0],
  fovH: 70,
  fovV: 70,
};

export function cameraFor(view: ViewId): CameraSpec {
  return view === "BOTTOM" ? BOTTOM_CAMERA : FRONT_CAMERA;
}

const SPACE: [number, number, number] = [3, 5, 12];
const OCEAN: [number, number, number] = [24, 84, 180];
const LAND: [number, number, number] = [52, 130, 66];
const GRID: [number, number, number] = [210, 220, 235];

/** Procedural land/ocean decision on the rotating surface. */
function isLand(lat: number, lon: number): boolean {
  const a = Math.sin(2.0 * lon + 1.3) * Math.cos(3.0 * lat);
  const b = Math.cos(3.5 * lon - 0.7) * Math.sin(2.0 * lat + 0.4);
  const c = Math.sin(5.0 * lon + 4.0 * lat);
  return a + 0.8 * b + 0.45 * c > 0.55;
}

/** Faint graticule so surface motion reads even over open ocean. */
function onGrid(lat: number, lon: number): boolean {
  const step = Math.PI / 18; // every 10 degrees
  const dLat = Math.abs(lat / step - Math.round(lat / step));
  const dLon = Math.abs(lon / step - Math.round(lon / step));
  return dLat < 0.03 || dLon < 0.03;
}

export interface RenderOptions {
  width: number;
  height: number;
}

/**
 * Render one frame into an RGBA buffer (row-major, top row first).
 * Pure: identical frames produce identical buffers.
 */
export function renderView(frame: TelemetryFrame, opts: RenderOptions): Uint8ClampedArray<ArrayBuffer> {
  const cam = cameraFor(frame.obs.view);
  const { width, height } = opts;
  const out = new Uint8ClampedArray(width * height * 4);
  const q = frame.q as Quat;
  const qInv = conj(q);
  const p = frame.position as Vec3;
  const pp = dot(p, p);
  const halfH = (cam.fovH * Math.PI) / 360;
  const halfV = (cam.fovV * Math.PI) / 360;
  const spinAngle = EARTH_SPIN_RATE * frame.t;

  for (let j = 0; j < height; j++) {
    const el = (0.5 - (j + 0.5) / height) * 2 * halfV;
    const tanEl = Math.tan(el);
    for (let i = 0; i < width; i++) {
      const az = ((i + 0.5) / width - 0.5) * 2 * halfH;
      const tanAz = Math.tan(az);
      const dCam = normalize([tanAz, tanEl, 1.0]);
      const dBody: Vec3 = [
        dCam[0] * cam.right[0] + dCam[1] * cam.up[0] + dCam[2] * cam.boresight[0],
        dCam[0] * cam.right[1] + dCam[1] * cam.up[1] + dCam[2] * cam.boresight[1],
        dCam[0] * cam.right[2] + dCam[1] * cam.up[2] + dCam[2] * cam.boresight[2],
      ];
      const d = rotate(qInv, dBody);

      const pd = dot(p, d);
      const disc = pd * pd - (pp - EARTH_RADIUS_KM * EARTH_RADIUS_KM);
      let rgb = SPACE;
      let shade = 1.0;
      if (disc >= 0) {
        const s = -pd - Math.sqrt(disc);
        if (s > 0) {
          const hit: Vec3 = [p[0] + s * d[0], p[1] + s * d[1], p[2] + s * d[2]];
          const n = normalize(hit);
          // Earth-fixed coordinates: unwind the spin for stable features.
          const lon = Math.atan2(hit[1], hit[0]) - spinAngle;
          const lat = Math.asin(Math.max(-1, Math.min(1, n[2])));
          if (onGrid(lat, lon)) {
            rgb = GRID;
          } else {
            rgb = isLand(lat, lon) ? LAND : OCEAN;
          }
          const incidence = -dot(d, n);
          shade = 0.35 + 0.65 * Math.max(0, incidence);
        }
      }
      const k = (j * width + i) * 4;
      out[k] = rgb[0] * shade;
      out[k + 1] = rgb[1] * shade;
      out[k + 2] = rgb[2] * shade;
      out[k + 3] = 255;
    }
  }
  return out;
}

/** True when the pixel at (i, j) shows Earth rather than space. */
export function isEarthPixel(
  buf: Uint8ClampedArray, width: number, i: number, j: number,
): boolean {
  const k = (j * width + i) * 4;
  return buf[k] + buf[k + 1] + buf[k + 2] > SPACE[0] + SPACE[1] + SPACE[2] + 6;
}

export interface DiskStats {
  earthFraction: number;
  centroidX: number;
  centroidY: number;
  rows: { first: number; last: number };
  touchesEdge: boolean;
}

/** Summary statistics over the Earth pixels of a rendered buffer. */
export function diskStats(buf: Uint8ClampedArray, width: number, height: number): DiskStats {
  let count = 0;
  let sx = 0;
  let sy = 0;
  let first = -1;
  let last = -1;
  let touchesEdge = false;
  for (let j = 0; j < height; j++) {
    for (let i = 0; i < width; i++) {
      if (!isEarthPixel(buf, width, i, j)) continue;
      count += 1;
      sx += i;
      sy += j;
      if (first < 0) first = j;
      last = j;
      if (i === 0 || j === 0 || i === width - 1 || j === height - 1) touchesEdge = true;
    }
  }
  return {
    earthFraction: count / (width * height),
    centroidX: count ? sx / count : NaN,
    centroidY: count ? sy / count : NaN,
    rows: { first, last },
    touchesEdge,
  };
}
