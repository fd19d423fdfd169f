/**
 * Practice/trial/debrief session flow.
 *
 * PRACTICE is untimed and restartable; TRIAL sends a start, locks the view
 * for the whole run, and ends in DEBRIEF showing the result. Server errors
 * drop back to IDLE with the detail preserved.
 */

import type { CohortId, TrialResult, ViewId } from "./protocol.js";
import type { Mode } from "./hud.js";

export type Effect =
  | { type: "send-start"; view: ViewId; cohort: CohortId }
  | { type: "send-abort" };

export interface FlowOutcome {
  accepted: boolean;
  effects: Effect[];
}

const NONE: FlowOutcome = { accepted: false, effects: [] };

export class TrialFlow {
  mode: Mode = "IDLE";
  view: ViewId = "BOTTOM";
  cohort: CohortId = "PILOT";
  result: TrialResult | null = null;
  lastError: string | null = null;

  selectView(view: ViewId): FlowOutcome {
    if (this.mode === "TRIAL") {
      return NONE; // one view per run
    }
    this.view = view;
    return { accepted: true, effects: [] };
  }

  selectCohort(cohort: CohortId): FlowOutcome {
    if (this.mode === "TRIAL") return NONE;
    this.cohort = cohort;
    return { accepted: true, effects: [] };
  }

  startPractice(): FlowOutcome {
    if (this.mode === "TRIAL") return NONE;
    this.mode = "PRACTICE";
    this.result = null;
    this.lastError = null;
    return { accepted: true, effects: [{ type: "send-start", view: this.view, cohort: this.cohort }] };
  }

  startTrial(): FlowOutcome {
    if (this.mode === "TRIAL") return NONE;
    this.mode = "TRIAL";
    this.result = null;
    this.lastError = null;
    return { accepted: true, effects: [{ type: "send-start", view: this.view, cohort: this.cohort }] };
  }

  abort(): FlowOutcome {
    if (this.mode !== "TRIAL" && this.mode !== "PRACTICE") return NONE;
    return { accepted: true, effects: [{ type: "send-abort" }] };
  }

  onResult(result: TrialResult): FlowOutcome {
    this.result = result;
    if (this.mode === "TRIAL") {
      this.mode = "DEBRIEF";
    }
    // practice sessions stay in PRACTICE: restartable
    return { accepted: true, effects: [] };
  }

  onServerError(detail: string): FlowOutcome {
    this.lastError = detail;
    this.mode = "IDLE";
    return { accepted: true, effects: [] };
  }
}
