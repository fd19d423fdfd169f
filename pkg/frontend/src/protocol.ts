/**
 * Wire protocol types for the session service and parsing helpers.
 *
 * The server speaks JSON text frames: telemetry, result, and error
 * messages. Unknown fields are ignored; messages with unknown kinds are
 * surfaced as null so callers can drop them without breaking.
 */

export type ViewId = "BOTTOM" | "FRONT";
export type CohortId = "PILOT" | "CIVILIAN";

export interface EulerError {
  yaw: number;
  pitch: number;
  roll: number;
}

export interface ViewObservation {
  view: ViewId;
  t: number;
  earth_visible: boolean;
  disk_center_offset: [number, number] | null;
  disk_angular_radius: number | null;
  full_disk_visible: boolean;
  horizon_arc_tilt: number | null;
  horizon_elevation: number | null;
  ground_flow_direction: number | null;
}

export interface TelemetryFrame {
  session?: string;
  tick: number;
  t: number;
  position: [number, number, number];
  velocity: [number, number, number];
  q: [number, number, number, number];
  omega: [number, number, number];
  stick: [number, number, number];
  fuel: number;
  obs: ViewObservation;
  phase: string;
  /** Withheld by the server during trials. */
  err?: EulerError;
}

export interface TrialResult {
  session?: string;
  view: ViewId;
  cohort: CohortId;
  completion_time: number;
  fuel: number;
  success: boolean;
  input_log_ref: string;
}

export interface ServerError {
  code: string;
  detail: string;
}

export type ServerMessage =
  | { kind: "telemetry"; frame: TelemetryFrame }
  | { kind: "result"; result: TrialResult }
  | { kind: "error"; error: ServerError };

export function clampAxis(v: number): number {
  if (Number.isNaN(v)) return 0;
  return Math.min(1, Math.max(-1, v));
}

function isVec(v: unknown, n: number): v is number[] {
  return Array.isArray(v) && v.length === n && v.every((x) => typeof x === "number");
}

/** Parse one server message; returns null for unknown or malformed kinds. */
export function parseServerMessage(text: string): ServerMessage | null {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch {
    return null;
  }
  if (typeof raw !== "object" || raw === null) return null;
  const msg = raw as Record<string, unknown>;
  switch (msg.kind) {
    case "telemetry": {
      if (
        typeof msg.tick !== "number" ||
        typeof msg.t !== "number" ||
        !isVec(msg.position, 3) ||
        !isVec(msg.q, 4) ||
        typeof msg.fuel !== "number" ||
        typeof msg.obs !== "object" ||
        msg.obs === null
      ) {
        return null;
      }
      return { kind: "telemetry", frame: msg as unknown as TelemetryFrame };
    }
    case "result": {
      if (typeof msg.success !== "boolean" || typeof msg.completion_time !== "number") {
        return null;
      }
      return { kind: "result", result: msg as unknown as TrialResult };
    }
    case "error": {
      return {
        kind: "error",
        error: {
          code: String(msg.code ?? "unknown"),
          detail: String(msg.detail ?? ""),
        },
      };
    }
    default:
      return null;
  }
}

export interface StickMessage {
  kind: "stick";
  t: number;
  x: number;
  y: number;
  z: number;
}

export function stickMessage(t: number, x: number, y: number, z: number): StickMessage {
  return { kind: "stick", t, x: clampAxis(x), y: clampAxis(y), z: clampAxis(z) };
}

export function startMessage(view: ViewId, cohort: CohortId): string {
  return JSON.stringify({ kind: "start", view, cohort });
}

export function abortMessage(): string {
  return JSON.stringify({ kind: "abort" });
}
