import { describe, expect, it } from "vitest";

import { TrialFlow } from "../src/flow.js";
import type { TrialResult } from "../src/protocol.js";

const RESULT: TrialResult = {
  view: "BOTTOM",
  cohort: "PILOT",
  completion_time: 79.4,
  fuel: 18.6,
  success: true,
  input_log_ref: "sess-42",
};

describe("trial flow", () => {
  it("practice -> trial -> debrief lifecycle", () => {
    const flow = new TrialFlow();
    const p = flow.startPractice();
    expect(p.effects).toEqual([{ type: "send-start", view: "BOTTOM", cohort: "PILOT" }]);
    expect(flow.mode).toBe("PRACTICE");

    const t = flow.startTrial();
    expect(t.accepted).toBe(true);
    expect(flow.mode).toBe("TRIAL");

    flow.onResult(RESULT);
    expect(flow.mode).toBe("DEBRIEF");
    expect(flow.result).toEqual(RESULT);
  });

  it("view switching is rejected mid-trial and allowed otherwise", () => {
    const flow = new TrialFlow();
    expect(flow.selectView("FRONT").accepted).toBe(true);
    flow.startTrial();
    expect(flow.selectView("BOTTOM").accepted).toBe(false);
    expect(flow.view).toBe("FRONT"); // locked for the run
    flow.onResult({ ...RESULT, view: "FRONT" });
    expect(flow.selectView("BOTTOM").accepted).toBe(true);
  });

  it("practice sessions are restartable after a result", () => {
    const flow = new TrialFlow();
    flow.startPractice();
    flow.onResult({ ...RESULT, success: false });
    expect(flow.mode).toBe("PRACTICE");
    expect(flow.startPractice().accepted).toBe(true);
  });

  it("abort during trial emits the abort effect and debriefs on result", () => {
    const flow = new TrialFlow();
    flow.startTrial();
    const out = flow.abort();
    expect(out.effects).toEqual([{ type: "send-abort" }]);
    flow.onResult({ ...RESULT, success: false });
    expect(flow.mode).toBe("DEBRIEF");
    expect(flow.result!.success).toBe(false);
  });

  it("abort is rejected outside flight", () => {
    const flow = new TrialFlow();
    expect(flow.abort().accepted).toBe(false);
  });

  it("server error returns to idle with detail shown", () => {
    const flow = new TrialFlow();
    flow.startTrial();
    flow.onServerError("bad-config: unknown view");
    expect(flow.mode).toBe("IDLE");
    expect(flow.lastError).toContain("bad-config");
  });

  it("double start of a trial is rejected while running", () => {
    const flow = new TrialFlow();
    flow.startTrial();
    expect(flow.startTrial().accepted).toBe(false);
    expect(flow.startPractice().accepted).toBe(false);
  });
});
