import { describe, expect, it } from "vitest";

import type { RegretRecord } from "../src/csv.js";
import { curveLabel, panelKey, summarizePanels } from "../src/summary.js";

function record(overrides: Partial<RegretRecord>): RegretRecord {
  return {
    agent: "ts",
    param: "",
    trial: 0,
    period: 1,
    regret: 0,
    cumRegret: 0,
    ...overrides,
  };
}

describe("curveLabel and panelKey", () => {
  it("joins agent and parameter with a colon", () => {
    expect(curveLabel({ agent: "blasts", param: "10" })).toBe("blasts:10");
    expect(curveLabel({ agent: "ts", param: "" })).toBe("ts");
  });

  it("groups by family by default and by parameter on request", () => {
    const r = { agent: "blasts", param: "10" };
    expect(panelKey(r, "agent")).toBe("blasts");
    expect(panelKey(r, "param")).toBe("parameter 10");
    expect(panelKey({ agent: "ts", param: "" }, "param")).toBe("no parameter");
  });
});

describe("summarizePanels", () => {
  it("reproduces the harness interval on a hand-worked pair", () => {
    // Two trials with cumulative regrets 10 and 20: mean 15, sample sd
    // 7.0710678..., half-width 1.96 * sd / sqrt(2) = 9.8 exactly.
    const records = [
      record({ trial: 0, cumRegret: 10 }),
      record({ trial: 1, cumRegret: 20 }),
    ];
    const panels = summarizePanels(records, "agent");
    const [point] = panels.get("ts")![0]!.points;
    expect(point!.mean).toBe(15);
    expect(point!.lo).toBeCloseTo(5.2, 10);
    expect(point!.hi).toBeCloseTo(24.8, 10);
  });

  it("leaves single-trial intervals empty", () => {
    const panels = summarizePanels([record({ cumRegret: 3 })], "agent");
    const [point] = panels.get("ts")![0]!.points;
    expect(point!.lo).toBeNull();
    expect(point!.hi).toBeNull();
  });

  it("sorts periods within a curve and panels by name", () => {
    const records = [
      record({ agent: "vids", period: 2, cumRegret: 2 }),
      record({ agent: "vids", period: 1, cumRegret: 1 }),
      record({ agent: "blasts", param: "1", period: 1, cumRegret: 5 }),
    ];
    const panels = summarizePanels(records, "agent");
    expect([...panels.keys()]).toEqual(["blasts", "vids"]);
    expect(panels.get("vids")![0]!.points.map((p) => p.period)).toEqual([1, 2]);
  });

  it("is independent of record order", () => {
    const records = [
      record({ trial: 0, period: 1, cumRegret: 1 }),
      record({ trial: 1, period: 1, cumRegret: 3 }),
      record({ trial: 0, period: 2, cumRegret: 2 }),
      record({ trial: 1, period: 2, cumRegret: 4 }),
    ];
    const forward = summarizePanels(records, "agent");
    const backward = summarizePanels([...records].reverse(), "agent");
    expect(forward).toEqual(backward);
  });
});
