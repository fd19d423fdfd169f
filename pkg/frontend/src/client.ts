/**
 * WebSocket client with a latest-frame latch.
 *
 * Rendering is decoupled from receipt: the newest telemetry frame replaces
 * the previous one (no queue), and the render loop reads whatever is
 * latched. Frames older than the staleness window trigger the
 * "signal lost" overlay.
 */

import {
  abortMessage,
  parseServerMessage,
  startMessage,
  type CohortId,
  type ServerError,
  type StickMessage,
  type TelemetryFrame,
  type TrialResult,
  type ViewId,
} from "./protocol.js";

export interface SocketLike {
  send(data: string): void;
  close(): void;
  onopen: ((ev?: unknown) => void) | null;
  onmessage: ((ev: { data: unknown }) => void) | null;
  onclose: ((ev?: unknown) => void) | null;
}

export type SocketFactory = (url: string) => SocketLike;

export const STALE_AFTER_MS = 500;

export class CockpitClient {
  latestFrame: TelemetryFrame | null = null;
  private lastFrameAt = -Infinity;
  private socket: SocketLike | null = null;
  connected = false;

  onResult: ((r: TrialResult) => void) | null = null;
  onError: ((e: ServerError) => void) | null = null;
  onConnectionChange: ((connected: boolean) => void) | null = null;

  constructor(
    private readonly factory: SocketFactory,
    private readonly now: () => number = () => Date.now(),
  ) {}

  connect(url: string): void {
    this.socket = this.factory(url);
    this.socket.onopen = () => {
      this.connected = true;
      this.onConnectionChange?.(true);
    };
    this.socket.onclose = () => {
      this.connected = false;
      this.onConnectionChange?.(false);
    };
    this.socket.onmessage = (ev) => this.handleMessage(String(ev.data));
  }

  private handleMessage(text: string): void {
    const msg = parseServerMessage(text);
    if (msg === null) return; // unknown kinds and junk are dropped
    switch (msg.kind) {
      case "telemetry":
        this.latestFrame = msg.frame; // last frame wins, no queue
        this.lastFrameAt = this.now();
        break;
      case "result":
        this.onResult?.(msg.result);
        break;
      case "error":
        this.onError?.(msg.error);
        break;
    }
  }

  isStale(maxAgeMs: number = STALE_AFTER_MS): boolean {
    return this.latestFrame !== null && this.now() - this.lastFrameAt > maxAgeMs;
  }

  start(view: ViewId, cohort: CohortId): void {
    this.socket?.send(startMessage(view, cohort));
  }

  sendStick(msg: StickMessage): void {
    this.socket?.send(JSON.stringify(msg));
  }

  abort(): void {
    this.socket?.send(abortMessage());
  }

  close(): void {
    this.socket?.close();
  }
}
