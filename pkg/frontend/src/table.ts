/**
 * Plan table view model.
 *
 * Columns follow the plan CSV ordering exactly:
 * year, Y, gY%, TFP, gTFP%, then per input its level and step rate.
 * Every cell's text is the service JSON field rendered with String() --
 * no rounding, no locale, no unit math -- so what is on screen is exactly
 * what the service said (growth columns therefore show fractional rates).
 * Discrete inputs show their served display value and carry the continuous
 * value as hover text. Delta badges against a pinned baseline are the one
 * piece of client-side arithmetic: (current - baseline) / baseline.
 */

import type { PlanJson, PlanRowJson } from "./types.js";

export interface PlanCell {
  column: string;
  text: string;
  hoverText?: string;
  deltaBadge?: string;
}

export interface PlanTableView {
  columns: string[];
  rows: PlanCell[][];
  placeholder: string | null;
}

export function planColumns(plan: PlanJson): string[] {
  const columns = ["year", "Y", "gY%", "TFP", "gTFP%"];
  for (const id of Object.keys(plan.model.elasticities)) {
    columns.push(id, `${id}_g%`);
  }
  return columns;
}

function text(value: number | null | undefined): string {
  return value === null || value === undefined ? "" : String(value);
}

export function deltaBadge(baseline: number, current: number): string {
  const delta = (current - baseline) / baseline;
  const sign = delta >= 0 ? "+" : "";
  return `${sign}${(delta * 100).toFixed(2)}%`;
}

function numericValue(row: PlanRowJson, column: string): number | null {
  if (column === "Y") return row.output;
  if (column === "TFP") return row.tfp;
  if (column in row.input_levels) return row.input_levels[column]!;
  return null;
}

export function buildPlanTable(
  plan: PlanJson | null,
  baseline: PlanJson | null = null,
): PlanTableView {
  if (!plan || plan.rows.length === 0) {
    return { columns: [], rows: [], placeholder: "No plan computed yet." };
  }
  const columns = planColumns(plan);
  const baselineByYear = new Map<number, PlanRowJson>();
  for (const row of baseline?.rows ?? []) baselineByYear.set(row.year, row);

  const rows = plan.rows.map((row) => {
    const step = row.growth_applied;
    const cells: PlanCell[] = [];
    for (const column of columns) {
      const cell: PlanCell = { column, text: "" };
      if (column === "year") {
        cell.text = String(row.year);
      } else if (column === "Y") {
        cell.text = text(row.output);
      } else if (column === "gY%") {
        cell.text = text(step?.output_growth);
      } else if (column === "TFP") {
        cell.text = text(row.tfp);
      } else if (column === "gTFP%") {
        cell.text = text(step?.tfp_growth);
      } else if (column.endsWith("_g%")) {
        const id = column.slice(0, -3);
        cell.text = text(step?.input_growth[id]);
      } else {
        // Input level column: display value for discrete inputs, with the
        // authoritative continuous value on hover.
        if (column in row.input_levels_display) {
          cell.text = text(row.input_levels_display[column]);
          cell.hoverText = text(row.input_levels[column]);
        } else {
          cell.text = text(row.input_levels[column]);
        }
      }
      const base = baselineByYear.get(row.year);
      if (base) {
        const a = numericValue(base, column);
        const b = numericValue(row, column);
        if (a !== null && b !== null && a !== 0 && a !== b) {
          cell.deltaBadge = deltaBadge(a, b);
        }
      }
      cells.push(cell);
    }
    return cells;
  });
  return { columns, rows, placeholder: null };
}
