/**
 * Aggregation of per-trial regret records into plottable curves.
 *
 * Matches the experiment harness's own summarization: per period, the mean
 * across trials with a 95% normal interval using the sample standard
 * deviation (n-1 denominator). Single-trial groups get no interval.
 */

import type { RegretRecord } from "./csv.js";

export interface CurvePoint {
  period: number;
  mean: number;
  lo: number | null;
  hi: number | null;
}

export interface Curve {
  label: string;
  points: CurvePoint[];
}

export type GroupBy = "agent" | "param";

/** Display label for one (agent, param) combination. */
export function curveLabel(record: Pick<RegretRecord, "agent" | "param">): string {
  return record.param === "" ? record.agent : `${record.agent}:${record.param}`;
}

/** Panel key under the requested grouping mode. */
export function panelKey(
  record: Pick<RegretRecord, "agent" | "param">,
  groupBy: GroupBy,
): string {
  if (groupBy === "param") {
    return record.param === "" ? "no parameter" : `parameter ${record.param}`;
  }
  return record.agent;
}

function meanAndInterval(values: number[]): Omit<CurvePoint, "period"> {
  const n = values.length;
  const mean = values.reduce((a, b) => a + b, 0) / n;
  if (n < 2) {
    return { mean, lo: null, hi: null };
  }
  const ss = values.reduce((a, b) => a + (b - mean) * (b - mean), 0);
  const half = (1.96 * Math.sqrt(ss / (n - 1))) / Math.sqrt(n);
  return { mean, lo: mean - half, hi: mean + half };
}

/**
 * Group records into panels of mean-cumulative-regret curves.
 *
 * Panels and curves are sorted by label so output is independent of input
 * row order.
 */
export function summarizePanels(
  records: RegretRecord[],
  groupBy: GroupBy,
): Map<string, Curve[]> {
  const byCurve = new Map<string, { panel: string; byPeriod: Map<number, number[]> }>();
  for (const record of records) {
    const label = curveLabel(record);
    let entry = byCurve.get(label);
    if (entry === undefined) {
      entry = { panel: panelKey(record, groupBy), byPeriod: new Map() };
      byCurve.set(label, entry);
    }
    let values = entry.byPeriod.get(record.period);
    if (values === undefined) {
      values = [];
      entry.byPeriod.set(record.period, values);
    }
    values.push(record.cumRegret);
  }

  const panels = new Map<string, Curve[]>();
  for (const label of [...byCurve.keys()].sort()) {
    const { panel, byPeriod } = byCurve.get(label)!;
    const points = [...byPeriod.keys()]
      .sort((a, b) => a - b)
      .map((period) => ({ period, ...meanAndInterval(byPeriod.get(period)!) }));
    const curves = panels.get(panel) ?? [];
    curves.push({ label, points });
    panels.set(panel, curves);
  }
  return new Map([...panels.entries()].sort(([a], [b]) => (a < b ? -1 : a > b ? 1 : 0)));
}
