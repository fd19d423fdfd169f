/**
 * Stick input: gamepad axes with keyboard fallback, spring-to-neutral,
 * and a rate-limited message stream (at least ~30 Hz heartbeat, at most
 * 60 Hz) with monotone timestamps.
 */

import { clampAxis, stickMessage, type StickMessage } from "./protocol.js";

export interface StickState {
  x: number; // roll demand
  y: number; // pitch demand
  z: number; // yaw demand
}

export const NEUTRAL: StickState = { x: 0, y: 0, z: 0 };

const KEY_BINDINGS: Record<string, { axis: keyof StickState; sign: number }> = {
  ArrowRight: { axis: "x", sign: 1 },
  ArrowLeft: { axis: "x", sign: -1 },
  ArrowUp: { axis: "y", sign: 1 },
  ArrowDown: { axis: "y", sign: -1 },
  KeyD: { axis: "z", sign: 1 },
  KeyA: { axis: "z", sign: -1 },
};

/** Keyboard fallback: full deflection while held, zero on release. */
export class KeyboardStick {
  private pressed = new Set<string>();

  keyDown(code: string): boolean {
    if (!(code in KEY_BINDINGS)) return false;
    this.pressed.add(code);
    return true;
  }

  keyUp(code: string): boolean {
    if (!(code in KEY_BINDINGS)) return false;
    this.pressed.delete(code);
    return true;
  }

  read(): StickState {
    const s: StickState = { x: 0, y: 0, z: 0 };
    for (const code of this.pressed) {
      const b = KEY_BINDINGS[code];
      s[b.axis] = clampAxis(s[b.axis] + b.sign);
    }
    return s;
  }
}

export interface GamepadLike {
  connected: boolean;
  axes: ReadonlyArray<number>;
}

export interface GamepadMapping {
  rollAxis: number;
  pitchAxis: number;
  yawAxis: number;
  invertPitch: boolean;
}

export const DEFAULT_GAMEPAD_MAPPING: GamepadMapping = {
  rollAxis: 0,
  pitchAxis: 1,
  yawAxis: 2,
  invertPitch: true, // gamepad convention: stick forward is negative
};

export function readGamepad(
  pad: GamepadLike | null | undefined,
  mapping: GamepadMapping = DEFAULT_GAMEPAD_MAPPING,
): StickState | null {
  if (!pad || !pad.connected) return null;
  const axis = (k: number) => clampAxis(pad.axes[k] ?? 0);
  return {
    x: axis(mapping.rollAxis),
    y: (mapping.invertPitch ? -1 : 1) * axis(mapping.pitchAxis),
    z: axis(mapping.yawAxis),
  };
}

export interface StreamOptions {
  minIntervalMs: number;
  heartbeatMs: number;
}

export const DEFAULT_STREAM_OPTIONS: StreamOptions = {
  minIntervalMs: 1000 / 60,
  heartbeatMs: 1000 / 30,
};

/**
 * Rate limits stick messages: changes go out at most every minIntervalMs,
 * and an unchanged state is repeated every heartbeatMs so the server's
 * latch always holds fresh input.
 */
export class StickStream {
  private lastSentAt = -Infinity;
  private lastTimestamp = -Infinity;
  private lastState: StickState | null = null;

  constructor(
    private readonly send: (msg: StickMessage) => void,
    private readonly opts: StreamOptions = DEFAULT_STREAM_OPTIONS,
  ) {}

  /** Feed the current state; returns true when a message was sent. */
  update(nowMs: number, state: StickState): boolean {
    const since = nowMs - this.lastSentAt;
    if (since < this.opts.minIntervalMs) return false;
    const changed =
      this.lastState === null ||
      state.x !== this.lastState.x ||
      state.y !== this.lastState.y ||
      state.z !== this.lastState.z;
    if (!changed && since < this.opts.heartbeatMs) return false;

    let t = nowMs / 1000;
    if (t <= this.lastTimestamp) {
      t = this.lastTimestamp + 1e-6; // keep timestamps strictly monotone
    }
    this.send(stickMessage(t, state.x, state.y, state.z));
    this.lastSentAt = nowMs;
    this.lastTimestamp = t;
    this.lastState = { ...state };
    return true;
  }
}
