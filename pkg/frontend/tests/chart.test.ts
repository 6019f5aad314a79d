import { describe, expect, it } from "vitest";

import { buildChartModel, renderChartSvg } from "../src/chart.js";
import { rational, theoryBucket } from "./fakes.js";

describe("buildChartModel", () => {
  it("degrades to theory-only when nothing has been played", () => {
    const model = buildChartModel([
      theoryBucket(0, 1, rational(1, 1)),
      theoryBucket(1, 2, rational(2, 3)),
      theoryBucket(1, 1, rational(1, 2)),
    ]);
    expect(model.empirical).toHaveLength(0);
    expect(model.theory.map((point) => point.conditionalR)).toEqual([1, 2 / 3, 0.5]);
    const svg = renderChartSvg(model);
    expect(svg).toContain("theory-conditional");
    expect(svg).not.toContain("empirical-point");
  });

  it("uses the service's theory rationals verbatim (no rederiving)", () => {
    // Deliberately wrong "theory" from the fake service: the chart must
    // display it rather than recompute 1/(1+q) on its own.
    const bucket = theoryBucket(1, 2, rational(9, 10));
    const model = buildChartModel([bucket]);
    expect(model.theory[0].conditionalR).toBe(0.9);
    expect(model.theory[0].conditionalLabel).toBe("9/10");
  });

  it("labels the unbiased point 2/3 straight from the service payload", () => {
    const model = buildChartModel([theoryBucket(1, 2, rational(2, 3))]);
    expect(model.theory[0].conditionalLabel).toBe("2/3");
    expect(model.theory[0].unconditionalLabel).toBe("2/3");
  });

  it("carries the service's Wilson interval into the error bars untouched", () => {
    const ci: [number, number] = [0.48780051644543846, 0.8076950191632386];
    const bucket = theoryBucket(1, 2, rational(2, 3), {
      games: 30,
      wins: 20,
      empirical_rate: 20 / 30,
      ci95: ci,
    });
    const model = buildChartModel([bucket]);
    const overall = model.empirical.find((point) => point.kind === "unconditional");
    expect(overall).toBeDefined();
    expect(overall!.ciLow).toBe(ci[0]);
    expect(overall!.ciHigh).toBe(ci[1]);

    const svg = renderChartSvg(model);
    expect(svg).toContain(`data-low="${ci[0]}"`);
    expect(svg).toContain(`data-high="${ci[1]}"`);
  });

  it("plots conditional points only for doors with games", () => {
    const bucket = theoryBucket(1, 2, rational(2, 3), {
      games: 5,
      wins: 3,
      empirical_rate: 0.6,
      ci95: [0.3, 0.8],
    });
    bucket.by_opened!.R = {
      games: 5,
      wins: 4,
      empirical_rate: 0.8,
      ci95: [0.4, 0.95],
      theory_rate: rational(2, 3),
    };
    const model = buildChartModel([bucket]);
    const kinds = model.empirical.map((point) => point.kind).sort();
    expect(kinds).toEqual(["conditional_R", "unconditional"]);
  });

  it("ignores stay buckets and sorts by bias", () => {
    const stay = theoryBucket(0, 1, rational(1, 1), { decision: "stay" });
    const model = buildChartModel([
      theoryBucket(1, 1, rational(1, 2)),
      stay,
      theoryBucket(0, 1, rational(1, 1)),
    ]);
    expect(model.theory.map((point) => point.q)).toEqual([0, 1]);
  });
});
