/**
 * Pure SVG builders: a line chart for output/input trajectories and a
 * stacked bar chart for per-year growth contributions.
 *
 * Only chart geometry (pixel scaling) happens here; every plotted quantity
 * is a served field (plan rows, the embedded decomposition). Labels show
 * the served numbers verbatim.
 */

import type { PlanJson } from "./types.js";

const WIDTH = 640;
const HEIGHT = 280;
const PAD = 36;

const PALETTE = ["#4477aa", "#ee6677", "#228833", "#ccbb44", "#66ccee", "#aa3377", "#bbbbbb"];

function escapeXml(value: string): string {
  return value.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

interface Series {
  label: string;
  points: Array<[number, number]>;
}

function lineChart(series: Series[], title: string): string {
  const xs = series.flatMap((s) => s.points.map((p) => p[0]));
  const ys = series.flatMap((s) => s.points.map((p) => p[1]));
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const yMin = Math.min(...ys, 0);
  const yMax = Math.max(...ys);
  const xSpan = xMax - xMin || 1;
  const ySpan = yMax - yMin || 1;
  const sx = (x: number) => PAD + ((x - xMin) / xSpan) * (WIDTH - 2 * PAD);
  const sy = (y: number) => HEIGHT - PAD - ((y - yMin) / ySpan) * (HEIGHT - 2 * PAD);

  const parts = [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${WIDTH} ${HEIGHT}" role="img">`,
    `<text x="${PAD}" y="16" font-size="13" font-weight="bold">${escapeXml(title)}</text>`,
    `<line x1="${PAD}" y1="${HEIGHT - PAD}" x2="${WIDTH - PAD}" y2="${HEIGHT - PAD}" stroke="#999"/>`,
    `<line x1="${PAD}" y1="${PAD}" x2="${PAD}" y2="${HEIGHT - PAD}" stroke="#999"/>`,
  ];
  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    const path = s.points
      .map(([x, y], j) => `${j === 0 ? "M" : "L"}${sx(x).toFixed(1)},${sy(y).toFixed(1)}`)
      .join(" ");
    parts.push(`<path d="${path}" fill="none" stroke="${color}" stroke-width="2"/>`);
    for (const [x, y] of s.points) {
      parts.push(
        `<circle cx="${sx(x).toFixed(1)}" cy="${sy(y).toFixed(1)}" r="2.5" fill="${color}">`
        + `<title>${escapeXml(`${s.label} year ${x}: ${String(y)}`)}</title></circle>`,
      );
    }
    parts.push(
      `<text x="${WIDTH - PAD + 4}" y="${sy(s.points[s.points.length - 1]![1]).toFixed(1)}"`
      + ` font-size="11" fill="${color}">${escapeXml(s.label)}</text>`,
    );
  });
  parts.push("</svg>");
  return parts.join("");
}

/** Output level over the plan years. */
export function outputTrajectoryChart(plan: PlanJson): string {
  const series: Series[] = [{
    label: "output",
    points: plan.rows.map((row) => [row.year, row.output]),
  }];
  return lineChart(series, "Output trajectory");
}

/** Each input's level path, one line per input (own scale per chart). */
export function inputPathsChart(plan: PlanJson): string {
  const series: Series[] = Object.keys(plan.model.elasticities).map((id) => ({
    label: id,
    points: plan.rows.map((row) => [row.year, row.input_levels[id]!]),
  }));
  return lineChart(series, "Input level paths");
}

/**
 * Stacked bars of the served per-source contributions for every planned
 * year (the per-year sources are constant along a proportional plan).
 */
export function contributionStackChart(plan: PlanJson): string {
  const sources = Object.keys(plan.decomposition.contributions);
  const years = plan.rows.filter((row) => row.growth_applied !== null).map((row) => row.year);
  if (years.length === 0) {
    return `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${WIDTH} ${HEIGHT}">`
      + `<text x="${PAD}" y="40" font-size="12">No planned years.</text></svg>`;
  }
  const total = sources.reduce(
    (sum, source) => sum + Math.max(plan.decomposition.contributions[source]!, 0), 0);
  const scale = (HEIGHT - 2 * PAD) / (total || 1);
  const bandWidth = (WIDTH - 2 * PAD) / years.length;
  const barWidth = Math.min(48, bandWidth * 0.6);

  const parts = [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${WIDTH} ${HEIGHT}" role="img">`,
    `<text x="${PAD}" y="16" font-size="13" font-weight="bold">Per-year growth contributions</text>`,
    `<line x1="${PAD}" y1="${HEIGHT - PAD}" x2="${WIDTH - PAD}" y2="${HEIGHT - PAD}" stroke="#999"/>`,
  ];
  years.forEach((year, yi) => {
    const x = PAD + yi * bandWidth + (bandWidth - barWidth) / 2;
    let top = HEIGHT - PAD;
    sources.forEach((source, si) => {
      const value = plan.decomposition.contributions[source]!;
      const height = Math.max(value, 0) * scale;
      top -= height;
      parts.push(
        `<rect x="${x.toFixed(1)}" y="${top.toFixed(1)}" width="${barWidth.toFixed(1)}"`
        + ` height="${height.toFixed(1)}" fill="${PALETTE[si % PALETTE.length]}">`
        + `<title>${escapeXml(`${source} year ${year}: ${String(value)}`)}</title></rect>`,
      );
    });
    parts.push(
      `<text x="${(x + barWidth / 2).toFixed(1)}" y="${HEIGHT - PAD + 14}"`
      + ` font-size="11" text-anchor="middle">${year}</text>`,
    );
  });
  sources.forEach((source, si) => {
    const lx = WIDTH - PAD - 120;
    const ly = PAD + si * 16;
    parts.push(
      `<rect x="${lx}" y="${ly - 9}" width="10" height="10" fill="${PALETTE[si % PALETTE.length]}"/>`,
      `<text x="${lx + 14}" y="${ly}" font-size="11">${escapeXml(source)}</text>`,
    );
  });
  parts.push("</svg>");
  return parts.join("");
}
