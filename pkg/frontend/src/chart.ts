// Theory-vs-practice chart model and SVG renderer.
//
// Every number plotted here comes from the service: theory values are the
// exact rationals it reports (displayed via their approx field), and the
// error bars are the 95% Wilson intervals it computes. Nothing is
// re-derived in the browser; with no stats at all the chart degrades to
// the theory curves alone.

import type { SessionApi } from "./api.js";
import type { StatsBucket, Variant } from "./types.js";
import { rationalLabel } from "./types.js";

export interface TheoryPoint {
  q: number;
  conditionalR: number;
  conditionalLabel: string; // e.g. "2/3", straight from the service rational
  unconditional: number;
  unconditionalLabel: string;
}

export interface EmpiricalPoint {
  q: number;
  kind: "conditional_R" | "unconditional";
  rate: number;
  ciLow: number;
  ciHigh: number;
  games: number;
}

export interface ChartModel {
  theory: TheoryPoint[];
  empirical: EmpiricalPoint[];
}

// One switch-decision bucket per grid q is enough to draw both curves:
// the per-R-door theory traces the posterior, the overall theory is flat.
export function buildChartModel(buckets: StatsBucket[]): ChartModel {
  const theory: TheoryPoint[] = [];
  const empirical: EmpiricalPoint[] = [];

  for (const bucket of buckets) {
    if (bucket.decision !== "switch") continue;
    const doorStats = bucket.by_opened?.R;
    if (!doorStats) continue;
    const q = bucket.q.approx;
    theory.push({
      q,
      conditionalR: doorStats.theory_rate.approx,
      conditionalLabel: rationalLabel(doorStats.theory_rate),
      unconditional: bucket.theory_rate.approx,
      unconditionalLabel: rationalLabel(bucket.theory_rate),
    });
    if (doorStats.games > 0 && doorStats.empirical_rate !== null && doorStats.ci95) {
      empirical.push({
        q,
        kind: "conditional_R",
        rate: doorStats.empirical_rate,
        ciLow: doorStats.ci95[0],
        ciHigh: doorStats.ci95[1],
        games: doorStats.games,
      });
    }
    if (bucket.games > 0 && bucket.empirical_rate !== null && bucket.ci95) {
      empirical.push({
        q,
        kind: "unconditional",
        rate: bucket.empirical_rate,
        ciLow: bucket.ci95[0],
        ciHigh: bucket.ci95[1],
        games: bucket.games,
      });
    }
  }

  theory.sort((a, b) => a.q - b.q);
  empirical.sort((a, b) => a.q - b.q);
  return { theory, empirical };
}

export async function fetchChartModel(
  api: SessionApi,
  variant: Variant,
  gridQs: string[],
): Promise<ChartModel> {
  const responses = await Promise.all(gridQs.map((q) => api.stats(variant, q)));
  const buckets = responses.flatMap((response) => response.buckets);
  return buildChartModel(buckets);
}

const WIDTH = 560;
const HEIGHT = 320;
const PAD = 40;

function x(q: number): number {
  return PAD + q * (WIDTH - 2 * PAD);
}

function y(rate: number): number {
  return HEIGHT - PAD - rate * (HEIGHT - 2 * PAD);
}

function fmt(value: number): string {
  return value.toFixed(2);
}

// Renders to an SVG string so it works identically in the browser and in
// DOM-less tests.
export function renderChartSvg(model: ChartModel): string {
  const parts: string[] = [];
  parts.push(
    `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" role="img" aria-label="win rate versus host bias">`,
  );
  parts.push(
    `<rect x="${PAD}" y="${PAD}" width="${WIDTH - 2 * PAD}" height="${HEIGHT - 2 * PAD}" class="chart-frame" fill="none" stroke="#888"/>`,
  );
  for (const grid of [0, 0.25, 0.5, 0.75, 1]) {
    parts.push(
      `<text x="${fmt(x(grid))}" y="${HEIGHT - PAD + 16}" text-anchor="middle" class="chart-tick">${grid}</text>`,
    );
  }
  for (const grid of [0, 0.5, 1]) {
    parts.push(
      `<text x="${PAD - 8}" y="${fmt(y(grid) + 4)}" text-anchor="end" class="chart-tick">${grid}</text>`,
    );
  }

  if (model.theory.length > 0) {
    const curve = model.theory
      .map((point) => `${fmt(x(point.q))},${fmt(y(point.conditionalR))}`)
      .join(" ");
    parts.push(
      `<polyline points="${curve}" fill="none" stroke="#0a6" stroke-width="2" class="theory-conditional"/>`,
    );
    const flat = model.theory[0].unconditional;
    parts.push(
      `<line x1="${x(0)}" y1="${fmt(y(flat))}" x2="${x(1)}" y2="${fmt(y(flat))}" stroke="#06a" stroke-dasharray="6 4" stroke-width="2" class="theory-unconditional"/>`,
    );
    parts.push(
      `<text x="${x(1) - 4}" y="${fmt(y(flat) - 6)}" text-anchor="end" class="chart-label">unconditional ${model.theory[0].unconditionalLabel}</text>`,
    );
  }

  for (const point of model.empirical) {
    const cx = fmt(x(point.q));
    const color = point.kind === "conditional_R" ? "#0a6" : "#06a";
    parts.push(
      `<line x1="${cx}" y1="${fmt(y(point.ciHigh))}" x2="${cx}" y2="${fmt(y(point.ciLow))}" stroke="${color}" stroke-width="1.5" class="error-bar" data-kind="${point.kind}" data-q="${point.q}" data-low="${point.ciLow}" data-high="${point.ciHigh}"/>`,
    );
    for (const cap of [point.ciLow, point.ciHigh]) {
      parts.push(
        `<line x1="${fmt(x(point.q) - 4)}" y1="${fmt(y(cap))}" x2="${fmt(x(point.q) + 4)}" y2="${fmt(y(cap))}" stroke="${color}" stroke-width="1.5"/>`,
      );
    }
    parts.push(
      `<circle cx="${cx}" cy="${fmt(y(point.rate))}" r="4" fill="${color}" class="empirical-point" data-kind="${point.kind}" data-games="${point.games}"/>`,
    );
  }

  parts.push("</svg>");
  return parts.join("");
}
