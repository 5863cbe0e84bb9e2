import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { readRdCsv, readRegretCsv } from "../src/csv.js";
import { renderRd, renderRegret } from "../src/render.js";

function fixture(name: string): string {
  return readFileSync(fileURLToPath(new URL(`../fixtures/${name}`, import.meta.url)), "utf-8");
}

function occurrences(haystack: string, needle: string): number {
  return haystack.split(needle).length - 1;
}

describe("renderRegret", () => {
  const twoAgents = readRegretCsv(fixture("regret_two_agents.csv"));

  it("matches the two-agent golden file byte for byte", () => {
    expect(renderRegret(twoAgents)).toBe(fixture("golden/regret_two_agents.svg"));
  });

  it("is idempotent", () => {
    expect(renderRegret(twoAgents)).toBe(renderRegret(twoAgents));
  });

  it("is independent of record order", () => {
    expect(renderRegret([...twoAgents].reverse())).toBe(renderRegret(twoAgents));
  });

  it("shows one legend entry per (agent, param) curve", () => {
    // Legend labels carry the plain 12px style; panel titles are italic.
    const svg = renderRegret(twoAgents);
    expect(occurrences(svg, 'font-size="12">blasts:10</text>')).toBe(1);
    expect(occurrences(svg, 'font-size="12">ts</text>')).toBe(1);
  });

  it("shades multi-trial curves with one band per curve", () => {
    const svg = renderRegret(twoAgents);
    expect(occurrences(svg, "<polygon")).toBe(2);
    expect(svg).toContain('fill-opacity="0.18"');
  });

  it("renders a single-trial run without a confidence band", () => {
    const single = readRegretCsv(fixture("regret_single_trial.csv"));
    const svg = renderRegret(single);
    expect(svg).toBe(fixture("golden/regret_single_trial.svg"));
    expect(svg).not.toContain("<polygon");
    expect(occurrences(svg, "<polyline")).toBe(1);
  });

  it("renders empty axes for a header-only file", () => {
    const svg = renderRegret([]);
    expect(svg).toBe(fixture("golden/regret_header_only.svg"));
    expect(svg).toContain(">no data</text>");
    expect(svg).not.toContain("<polyline");
  });

  it("groups panels by parameter on request", () => {
    const svg = renderRegret(twoAgents, "param");
    expect(svg).toContain(">no parameter</text>");
    expect(svg).toContain(">parameter 10</text>");
  });

  it("does not mutate its input records", () => {
    const copy = twoAgents.map((r) => ({ ...r }));
    renderRegret(twoAgents);
    expect(twoAgents).toEqual(copy);
  });
});

describe("renderRd", () => {
  const compare = readRdCsv(fixture("rd_compare.csv"));

  it("matches the comparison golden file byte for byte", () => {
    expect(renderRd(compare)).toBe(fixture("golden/rd_compare.svg"));
  });

  it("connects solver points as one curve and marks satisficing points", () => {
    const svg = renderRd(compare);
    expect(occurrences(svg, "<polyline")).toBe(1);
    expect(occurrences(svg, "<circle")).toBe(8 + 1); // sweep points + legend swatch
    expect(occurrences(svg, '<polygon fill="white"')).toBe(4 + 1); // diamonds + legend swatch
    expect(svg).toContain(">eps=0.05</text>");
  });

  it("sorts the solver curve by distortion regardless of row order", () => {
    expect(renderRd([...compare].reverse())).toBe(renderRd(compare));
  });

  it("renders a solver-only file with no markers", () => {
    const svg = renderRd(readRdCsv(fixture("rd_ba_only.csv")));
    expect(svg).toBe(fixture("golden/rd_ba_only.svg"));
    expect(svg).not.toContain('<polygon fill="white"');
    expect(svg).not.toContain("satisficing");
  });

  it("degenerates gracefully to one point per method", () => {
    const svg = renderRd(readRdCsv(fixture("rd_one_each.csv")));
    expect(svg).not.toContain("<polyline"); // a single solver point has no curve
    expect(occurrences(svg, "<circle")).toBe(1 + 1);
    expect(occurrences(svg, '<polygon fill="white"')).toBe(1 + 1);
  });
});
