/**
 * Realized-entry form: validate before submit, show the evaluation panel,
 * and build the one-click replan request.
 *
 * Validation is structural only (positive levels, a year the plan knows);
 * the gap numbers and the remaining required rate on the panel are the
 * service response verbatim.
 */

import type { EvaluationJson, PlanJson, TargetJson } from "./types.js";

export interface RealizedEntry {
  year: number;
  input_levels: Record<string, number>;
  output_level: number;
}

export interface ValidationResult {
  ok: boolean;
  problems: string[];
  submitDisabled: boolean;
}

export function validateRealizedEntry(plan: PlanJson | null, entry: RealizedEntry): ValidationResult {
  const problems: string[] = [];
  if (!plan || plan.rows.length === 0) {
    return { ok: false, problems: ["No plan to evaluate against."], submitDisabled: true };
  }
  const firstYear = plan.rows[0]!.year;
  const lastYear = plan.rows[plan.rows.length - 1]!.year;
  if (!Number.isInteger(entry.year) || entry.year < firstYear || entry.year > lastYear) {
    problems.push(`Year must be within the plan horizon (${firstYear}..${lastYear}).`);
  }
  for (const id of Object.keys(plan.model.elasticities)) {
    const level = entry.input_levels[id];
    if (level === undefined) {
      problems.push(`Missing level for input ${id}.`);
    } else if (!(level > 0)) {
      problems.push(`Level for ${id} must be positive.`);
    }
  }
  if (!(entry.output_level > 0)) {
    problems.push("Output level must be positive.");
  }
  return { ok: problems.length === 0, problems, submitDisabled: problems.length > 0 };
}

export interface EvaluationPanel {
  year: number;
  outputGapText: string;
  inputGapTexts: Record<string, string>;
  remainingRateText: string;
  replanAvailable: boolean;
}

export function buildEvaluationPanel(evaluation: EvaluationJson): EvaluationPanel {
  const inputGapTexts: Record<string, string> = {};
  for (const [id, gap] of Object.entries(evaluation.input_gaps)) {
    inputGapTexts[id] = String(gap);
  }
  return {
    year: evaluation.year,
    outputGapText: String(evaluation.output_gap),
    inputGapTexts,
    // Pass-through contract: the panel shows the served rate verbatim.
    remainingRateText:
      evaluation.remaining_required_rate === null ? "" : String(evaluation.remaining_required_rate),
    replanAvailable: evaluation.remaining_required_rate !== null,
  };
}

export interface ReplanRequest {
  target: TargetJson;
  horizon_years: number;
}

/**
 * One-click replan maps onto the public endpoints: PATCH the target to the
 * service-provided remaining required rate (verbatim) over the remaining
 * years, then recompute the plan.
 */
export function buildReplanRequest(plan: PlanJson, evaluation: EvaluationJson): ReplanRequest | null {
  if (evaluation.remaining_required_rate === null) return null;
  const lastYear = plan.rows[plan.rows.length - 1]!.year;
  const remaining = lastYear - evaluation.year;
  if (remaining <= 0) return null;
  return {
    target: { kind: "explicit_rate", rate: evaluation.remaining_required_rate },
    horizon_years: remaining,
  };
}
