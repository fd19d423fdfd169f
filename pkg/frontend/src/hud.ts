/**
 * HUD model and DOM rendering.
 *
 * The HUD is computed as a widget list from cockpit state, then rendered
 * into the DOM; tests assert on the widget roles directly. During trials
 * the only flight data shown are elapsed time and fuel; nothing
 * attitude-like is ever emitted (the server withholds the data anyway).
 */

import type { TrialResult, ViewId } from "./protocol.js";

export type Mode = "IDLE" | "PRACTICE" | "TRIAL" | "DEBRIEF";

export interface HudState {
  mode: Mode;
  connection: "disconnected" | "connecting" | "connected";
  view: ViewId;
  elapsed: number | null;
  fuel: number | null;
  signalLost: boolean;
  result: TrialResult | null;
  lastError: string | null;
}

export interface HudWidget {
  id: string;
  role: string;
  text: string;
}

/** Roles that would leak attitude information; never emitted. */
export const FORBIDDEN_TRIAL_ROLES = [
  "attitude-error",
  "body-rates",
  "pitch-ladder",
  "heading-scale",
  "bank-indicator",
  "virtual-horizon",
  "adi",
  "horizon-overlay",
] as const;

export function hudWidgets(s: HudState): HudWidget[] {
  const widgets: HudWidget[] = [
    {
      id: "status",
      role: "status",
      text: `${s.connection.toUpperCase()} | ${s.mode} | ${s.view} VIEW`,
    },
  ];
  if (s.mode === "TRIAL") {
    widgets.push({
      id: "timer",
      role: "elapsed-time",
      text: s.elapsed === null ? "T+ --.-" : `T+ ${s.elapsed.toFixed(1)} s`,
    });
    widgets.push({
      id: "fuel",
      role: "fuel",
      text: s.fuel === null ? "FUEL --.-" : `FUEL ${s.fuel.toFixed(1)}`,
    });
  }
  if (s.mode === "PRACTICE") {
    widgets.push({ id: "practice", role: "practice-label", text: "PRACTICE (untimed)" });
  }
  if (s.mode === "DEBRIEF" && s.result) {
    const r = s.result;
    widgets.push({
      id: "result",
      role: "trial-result",
      text:
        `${r.success ? "SUCCESS" : "FAILED"} | time ${r.completion_time.toFixed(1)} s` +
        ` | fuel ${r.fuel.toFixed(1)}`,
    });
    if (r.input_log_ref) {
      widgets.push({
        id: "traces",
        role: "trace-link",
        text: `attitude traces: /logs/${r.input_log_ref}`,
      });
    }
  }
  if (s.signalLost && (s.mode === "TRIAL" || s.mode === "PRACTICE")) {
    widgets.push({ id: "signal", role: "signal-lost", text: "SIGNAL LOST" });
  }
  if (s.lastError) {
    widgets.push({ id: "error", role: "error", text: s.lastError });
  }
  return widgets;
}

export function renderHud(root: Element, widgets: HudWidget[]): void {
  root.replaceChildren();
  const doc = root.ownerDocument;
  for (const w of widgets) {
    const el = doc.createElement("div");
    el.id = `hud-${w.id}`;
    el.className = `hud-widget hud-${w.role}`;
    el.setAttribute("data-role", w.role);
    el.textContent = w.text;
    root.appendChild(el);
  }
}
