/**
 * Scenario view state.
 *
 * Holds the persisted scenario snapshot, the dirty (unsaved) override
 * knobs, the latest what-if plan, and an optional pinned baseline plan.
 * Dirty state is only written to the service through an explicit save.
 * What-if responses carry a sequence token; a stale response (token older
 * than the latest issued) is dropped, so the displayed plan always comes
 * from the newest request. The displayed plan is always labelled as either
 * the persisted plan or a what-if.
 */

import type { PlanJson, ScenarioJson, StrategyJson, TargetJson } from "./types.js";

export interface DirtyOverrides {
  target?: TargetJson;
  strategy?: StrategyJson;
  horizon_years?: number;
}

export type PlanLabel = "persisted" | "what-if";

export class ScenarioView {
  scenario: ScenarioJson;
  dirty: DirtyOverrides = {};
  whatIfPlan: PlanJson | null = null;
  pinnedBaseline: PlanJson | null = null;
  infeasibility: string | null = null;
  private appliedSeq = 0;

  constructor(scenario: ScenarioJson) {
    this.scenario = scenario;
  }

  /** The plan on screen plus its provenance label. */
  get displayed(): { plan: PlanJson | null; label: PlanLabel } {
    if (this.whatIfPlan) return { plan: this.whatIfPlan, label: "what-if" };
    return { plan: this.scenario.latest_plan, label: "persisted" };
  }

  get hasDirtyState(): boolean {
    return Object.keys(this.dirty).length > 0;
  }

  setDirty(overrides: DirtyOverrides): void {
    this.dirty = { ...this.dirty, ...overrides };
  }

  /** Apply a what-if response; stale sequence tokens lose. */
  applyWhatIf(seq: number, plan: PlanJson): boolean {
    if (seq < this.appliedSeq) return false;
    this.appliedSeq = seq;
    this.whatIfPlan = plan;
    this.infeasibility = null;
    return true;
  }

  applyInfeasibility(seq: number, message: string): boolean {
    if (seq < this.appliedSeq) return false;
    this.appliedSeq = seq;
    this.infeasibility = message;
    return true;
  }

  /** A fresh persisted snapshot replaces everything unsaved. */
  applyScenario(scenario: ScenarioJson): void {
    this.scenario = scenario;
    this.dirty = {};
    this.whatIfPlan = null;
    this.infeasibility = null;
  }

  pinBaseline(): void {
    const { plan } = this.displayed;
    this.pinnedBaseline = plan;
  }

  clearBaseline(): void {
    this.pinnedBaseline = null;
  }
}
