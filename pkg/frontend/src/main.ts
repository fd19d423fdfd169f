/**
 * Cockpit page wiring: canvas render loop, HUD, input capture, and the
 * practice/trial flow. The server URL comes from the `server` query
 * parameter, defaulting to ws(s)://<host>/ws.
 */

import { CockpitClient } from "./client.js";
import { TrialFlow } from "./flow.js";
import { hudWidgets, renderHud, type HudState } from "./hud.js";
import { KeyboardStick, readGamepad, StickStream, type StickState } from "./input.js";
import type { ViewId } from "./protocol.js";
import { renderView } from "./renderer.js";

const RENDER_SIZE = 256;

function serverUrl(): string {
  const params = new URLSearchParams(window.location.search);
  const fromQuery = params.get("server");
  if (fromQuery) return fromQuery;
  const scheme = window.location.protocol === "https:" ? "wss" : "ws";
  return `${scheme}://${window.location.host}/ws`;
}

function main(): void {
  const canvas = document.getElementById("view") as HTMLCanvasElement;
  canvas.width = RENDER_SIZE;
  canvas.height = RENDER_SIZE;
  const ctx = canvas.getContext("2d")!;
  const hudRoot = document.getElementById("hud")!;
  const controls = {
    view: document.getElementById("view-select") as HTMLSelectElement,
    cohort: document.getElementById("cohort-select") as HTMLSelectElement,
    practice: document.getElementById("btn-practice") as HTMLButtonElement,
    trial: document.getElementById("btn-trial") as HTMLButtonElement,
    abort: document.getElementById("btn-abort") as HTMLButtonElement,
  };

  const flow = new TrialFlow();
  const client = new CockpitClient((url) => new WebSocket(url) as never);
  const keyboard = new KeyboardStick();
  let inputWarning = "";

  const stream = new StickStream((msg) => client.sendStick(msg));

  client.onResult = (r) => flow.onResult(r);
  client.onError = (e) => flow.onServerError(`${e.code}: ${e.detail}`);
  client.connect(serverUrl());

  const runEffects = (effects: ReturnType<TrialFlow["startTrial"]>["effects"]) => {
    for (const eff of effects) {
      if (eff.type === "send-start") client.start(eff.view, eff.cohort);
      if (eff.type === "send-abort") client.abort();
    }
  };

  controls.view.addEventListener("change", () => {
    const accepted = flow.selectView(controls.view.value as ViewId).accepted;
    if (!accepted) controls.view.value = flow.view; // one view per run
  });
  controls.cohort.addEventListener("change", () => {
    flow.selectCohort(controls.cohort.value as never);
  });
  controls.practice.addEventListener("click", () => runEffects(flow.startPractice().effects));
  controls.trial.addEventListener("click", () => runEffects(flow.startTrial().effects));
  controls.abort.addEventListener("click", () => runEffects(flow.abort().effects));

  window.addEventListener("keydown", (ev) => {
    if (keyboard.keyDown(ev.code)) ev.preventDefault();
  });
  window.addEventListener("keyup", (ev) => {
    if (keyboard.keyUp(ev.code)) ev.preventDefault();
  });

  const readStick = (): StickState => {
    const pads = navigator.getGamepads?.() ?? [];
    const pad = pads.find((p) => p && p.connected);
    const fromPad = readGamepad(pad ?? null);
    if (fromPad) {
      inputWarning = "";
      return fromPad;
    }
    inputWarning = pads.length ? "gamepad disconnected, keyboard active" : "";
    return keyboard.read();
  };

  let lastRenderedTick = -1;
  const tick = (nowMs: number) => {
    if (flow.mode === "TRIAL" || flow.mode === "PRACTICE") {
      stream.update(nowMs, readStick());
    }

    const frame = client.latestFrame;
    if (frame && frame.tick !== lastRenderedTick) {
      const buf = renderView(frame, { width: RENDER_SIZE, height: RENDER_SIZE });
      ctx.putImageData(new ImageData(buf, RENDER_SIZE, RENDER_SIZE), 0, 0);
      lastRenderedTick = frame.tick;
    }

    const hudState: HudState = {
      mode: flow.mode,
      connection: client.connected ? "connected" : "disconnected",
      view: flow.view,
      elapsed: frame ? frame.t : null,
      fuel: frame ? frame.fuel : null,
      signalLost: client.isStale(),
      result: flow.result,
      lastError: flow.lastError ?? (inputWarning || null),
    };
    renderHud(hudRoot, hudWidgets(hudState));
    controls.view.disabled = flow.mode === "TRIAL";
    requestAnimationFrame(tick);
  };
  requestAnimationFrame(tick);
}

main();
