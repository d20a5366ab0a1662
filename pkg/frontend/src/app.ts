/**
 * DOM wiring for the scenario explorer. All state logic lives in the
 * framework-free modules (state, table, slider, form, charts); this file
 * only moves data between them and the page.
 */

import { ApiClient, ServiceError } from "./api.js";
import { contributionStackChart, inputPathsChart, outputTrajectoryChart } from "./charts.js";
import { DebouncedRequester } from "./debounce.js";
import { buildEvaluationPanel, buildReplanRequest, validateRealizedEntry } from "./form.js";
import type { RealizedEntry } from "./form.js";
import { strategyForShare } from "./slider.js";
import { ScenarioView } from "./state.js";
import { buildPlanTable } from "./table.js";
import type { EvaluationJson } from "./types.js";

// API origin is same-origin by default; override with ?api=http://host:port
// when the static files are served from a different local port.
const apiBase = new URLSearchParams(window.location.search).get("api") ?? "";
const api = new ApiClient(apiBase);
const whatIfRequester = new DebouncedRequester(250);

let view: ScenarioView | null = null;
let lastEvaluation: EvaluationJson | null = null;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function setBanner(message: string | null): void {
  const banner = el<HTMLDivElement>("banner");
  banner.textContent = message ?? "";
  banner.style.display = message ? "block" : "none";
}

function renderTable(): void {
  if (!view) return;
  const { plan, label } = view.displayed;
  el<HTMLSpanElement>("plan-label").textContent =
    plan ? (label === "what-if" ? "what-if (not saved)" : "persisted plan") : "";
  const tableView = buildPlanTable(plan, view.pinnedBaseline);
  const host = el<HTMLDivElement>("plan-table");
  if (tableView.placeholder) {
    host.innerHTML = `<p class="placeholder">${tableView.placeholder}</p>`;
    return;
  }
  const head = tableView.columns.map((c) => `<th>${c}</th>`).join("");
  const body = tableView.rows.map((cells) => {
    const tds = cells.map((cell) => {
      const title = cell.hoverText ? ` title="${cell.hoverText}"` : "";
      const badge = cell.deltaBadge ? ` <span class="delta">${cell.deltaBadge}</span>` : "";
      return `<td${title}>${cell.text}${badge}</td>`;
    }).join("");
    return `<tr>${tds}</tr>`;
  }).join("");
  host.innerHTML = `<table><thead><tr>${head}</tr></thead><tbody>${body}</tbody></table>`;
}

function renderCharts(): void {
  if (!view) return;
  const { plan } = view.displayed;
  const host = el<HTMLDivElement>("charts");
  if (!plan) {
    host.innerHTML = "";
    return;
  }
  host.innerHTML =
    outputTrajectoryChart(plan) + inputPathsChart(plan) + contributionStackChart(plan);
}

function renderRealizedForm(): void {
  if (!view) return;
  const { plan } = view.displayed;
  const host = el<HTMLDivElement>("realized-inputs");
  if (!plan) {
    host.innerHTML = "";
    return;
  }
  host.innerHTML = Object.keys(plan.model.elasticities).map((id) =>
    `<label>${id} <input type="number" step="any" data-input-id="${id}"></label>`,
  ).join(" ");
}

function renderAll(): void {
  renderTable();
  renderCharts();
  renderRealizedForm();
  if (view) {
    el<HTMLSpanElement>("scenario-meta").textContent =
      `scenario ${view.scenario.id} · v${view.scenario.version}` +
      (view.hasDirtyState ? " · unsaved changes" : "");
  }
}

function scheduleWhatIf(): void {
  if (!view) return;
  const scenarioId = view.scenario.id;
  const overrides = { ...view.dirty };
  whatIfRequester.schedule(({ seq, signal }) => {
    api.whatIf(scenarioId, overrides, signal).then(
      (plan) => {
        if (view && view.scenario.id === scenarioId && view.applyWhatIf(seq, plan)) {
          setBanner(null);
          renderAll();
        }
      },
      (error: unknown) => {
        if (error instanceof DOMException && error.name === "AbortError") return;
        if (view && error instanceof ServiceError && error.status === 422) {
          if (view.applyInfeasibility(seq, `Infeasible mix: ${error.message}`)) {
            setBanner(view.infeasibility);
          }
          return;
        }
        setBanner(error instanceof Error ? error.message : String(error));
      },
    );
  });
}

async function loadScenario(): Promise<void> {
  const id = el<HTMLInputElement>("scenario-id").value.trim();
  if (!id) return;
  try {
    const scenario = await api.getScenario(id);
    view = new ScenarioView(scenario);
    lastEvaluation = null;
    setBanner(null);
    el<HTMLInputElement>("horizon").value = String(scenario.horizon_years);
    el<HTMLAnchorElement>("report-csv").href = api.reportUrl(id, "csv");
    renderAll();
  } catch (error) {
    setBanner(error instanceof Error ? error.message : String(error));
  }
}

function onSliderInput(): void {
  if (!view) return;
  const { plan } = view.displayed;
  const baselineRate = plan?.annual_output_growth ?? view.scenario.target.rate ?? 0;
  const share = Number(el<HTMLInputElement>("tfp-share").value) / 100;
  el<HTMLSpanElement>("share-readout").textContent = `${Math.round(share * 100)}% from TFP`;
  view.setDirty({ strategy: strategyForShare(share, baselineRate) });
  scheduleWhatIf();
  renderAll();
}

function onHorizonInput(): void {
  if (!view) return;
  const horizon = Number(el<HTMLInputElement>("horizon").value);
  if (Number.isInteger(horizon) && horizon >= 1) {
    view.setDirty({ horizon_years: horizon });
    scheduleWhatIf();
    renderAll();
  }
}

async function saveDirtyState(): Promise<void> {
  if (!view || !view.hasDirtyState) return;
  try {
    const patched = await api.patchScenario(
      view.scenario.id, { ...view.dirty }, view.scenario.version);
    view.applyScenario(patched);
    const plan = await api.computePlan(view.scenario.id);
    const refreshed = await api.getScenario(view.scenario.id);
    view.applyScenario(refreshed);
    view.scenario.latest_plan = plan;
    setBanner(null);
    renderAll();
  } catch (error) {
    setBanner(error instanceof Error ? error.message : String(error));
  }
}

async function recomputePlan(): Promise<void> {
  if (!view) return;
  try {
    await api.computePlan(view.scenario.id);
    const refreshed = await api.getScenario(view.scenario.id);
    view.applyScenario(refreshed);
    setBanner(null);
    renderAll();
  } catch (error) {
    setBanner(error instanceof Error ? error.message : String(error));
  }
}

async function submitRealized(): Promise<void> {
  if (!view) return;
  const { plan } = view.displayed;
  const entry: RealizedEntry = {
    year: Number(el<HTMLInputElement>("realized-year").value),
    output_level: Number(el<HTMLInputElement>("realized-output").value),
    input_levels: {},
  };
  document.querySelectorAll<HTMLInputElement>("#realized-inputs input").forEach((input) => {
    entry.input_levels[input.dataset.inputId!] = Number(input.value);
  });
  const validation = validateRealizedEntry(plan, entry);
  const problems = el<HTMLUListElement>("realized-problems");
  problems.innerHTML = validation.problems.map((p) => `<li>${p}</li>`).join("");
  if (!validation.ok) return;

  try {
    const evaluation = await api.submitRealized(view.scenario.id, entry);
    lastEvaluation = evaluation;
    const refreshed = await api.getScenario(view.scenario.id);
    view.applyScenario(refreshed);
    const panel = buildEvaluationPanel(evaluation);
    el<HTMLDivElement>("evaluation-panel").innerHTML =
      `<p>Year ${panel.year}: output gap <code>${panel.outputGapText}</code>, ` +
      `remaining required rate <code>${panel.remainingRateText}</code></p>` +
      Object.entries(panel.inputGapTexts)
        .map(([id, gap]) => `<span class="gap">${id}: <code>${gap}</code></span>`)
        .join(" ");
    el<HTMLButtonElement>("replan").disabled = !panel.replanAvailable;
    renderAll();
  } catch (error) {
    setBanner(error instanceof Error ? error.message : String(error));
  }
}

async function replanFromEvaluation(): Promise<void> {
  if (!view || !lastEvaluation) return;
  const { plan } = view.displayed;
  if (!plan) return;
  const request = buildReplanRequest(plan, lastEvaluation);
  if (!request) return;
  try {
    const patched = await api.patchScenario(
      view.scenario.id,
      { target: request.target, horizon_years: request.horizon_years },
      view.scenario.version,
    );
    view.applyScenario(patched);
    await recomputePlan();
  } catch (error) {
    setBanner(error instanceof Error ? error.message : String(error));
  }
}

export function wire(): void {
  el<HTMLButtonElement>("load").addEventListener("click", () => void loadScenario());
  el<HTMLInputElement>("tfp-share").addEventListener("input", onSliderInput);
  el<HTMLInputElement>("horizon").addEventListener("change", onHorizonInput);
  el<HTMLButtonElement>("save").addEventListener("click", () => void saveDirtyState());
  el<HTMLButtonElement>("compute").addEventListener("click", () => void recomputePlan());
  el<HTMLButtonElement>("pin").addEventListener("click", () => {
    view?.pinBaseline();
    renderAll();
  });
  el<HTMLButtonElement>("unpin").addEventListener("click", () => {
    view?.clearBaseline();
    renderAll();
  });
  el<HTMLButtonElement>("submit-realized").addEventListener("click", () => void submitRealized());
  el<HTMLButtonElement>("replan").addEventListener("click", () => void replanFromEvaluation());
}

if (typeof document !== "undefined" && document.getElementById("load")) {
  wire();
}
