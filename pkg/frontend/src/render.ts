/**
 * Pure CSV-to-SVG renderers.
 *
 * Both take parsed records and return the complete SVG text; file handling
 * lives in the CLI. Output depends only on the records and options, never
 * on time, environment, or input row order.
 */

import type { RdRecord, RegretRecord } from "./csv.js";
import { summarizePanels, type Curve, type GroupBy } from "./summary.js";
import {
  PALETTE,
  band,
  circle,
  diamond,
  document,
  fmt,
  line,
  linearScale,
  niceTicks,
  padded,
  polyline,
  text,
  tickLabel,
  type LinearScale,
} from "./svg.js";

const WIDTH = 720;
const PLOT_LEFT = 62;
const PLOT_RIGHT = WIDTH - 20;
const TITLE_HEIGHT = 30;
const PANEL_LABEL_HEIGHT = 22;
const PANEL_PLOT_HEIGHT = 210;
const PANEL_FOOTER = 40;
const PANEL_BLOCK = PANEL_LABEL_HEIGHT + PANEL_PLOT_HEIGHT + PANEL_FOOTER;

const FRAME_COLOR = "#444444";
const GRID_COLOR = "#dddddd";

function frameAndAxes(
  top: number,
  xScale: LinearScale,
  yScale: LinearScale,
  xCaption: string,
  yCaption: string,
): string[] {
  const bottom = top + PANEL_PLOT_HEIGHT;
  const parts: string[] = [];
  for (const tick of niceTicks(xScale.domain[0], xScale.domain[1])) {
    const x = xScale(tick);
    parts.push(line(x, top, x, bottom, GRID_COLOR));
    parts.push(text(x, bottom + 16, tickLabel(tick), "middle"));
  }
  for (const tick of niceTicks(yScale.domain[0], yScale.domain[1])) {
    const y = yScale(tick);
    parts.push(line(PLOT_LEFT, y, PLOT_RIGHT, y, GRID_COLOR));
    parts.push(text(PLOT_LEFT - 6, y + 4, tickLabel(tick), "end"));
  }
  parts.push(
    `<rect x="${fmt(PLOT_LEFT)}" y="${fmt(top)}" width="${fmt(PLOT_RIGHT - PLOT_LEFT)}" ` +
      `height="${fmt(PANEL_PLOT_HEIGHT)}" fill="none" stroke="${FRAME_COLOR}"/>`,
  );
  parts.push(text((PLOT_LEFT + PLOT_RIGHT) / 2, bottom + 32, xCaption, "middle"));
  const yMid = top + PANEL_PLOT_HEIGHT / 2;
  parts.push(
    `<text x="${fmt(16)}" y="${fmt(yMid)}" text-anchor="middle" font-family="sans-serif" ` +
      `font-size="12" transform="rotate(-90 ${fmt(16)} ${fmt(yMid)})">${yCaption}</text>`,
  );
  return parts;
}

function curveExtents(panels: Map<string, Curve[]>): {
  x: [number, number];
  y: [number, number];
} {
  let xMin = Infinity;
  let xMax = -Infinity;
  let yMin = Infinity;
  let yMax = -Infinity;
  for (const curves of panels.values()) {
    for (const curve of curves) {
      for (const p of curve.points) {
        xMin = Math.min(xMin, p.period);
        xMax = Math.max(xMax, p.period);
        yMin = Math.min(yMin, p.lo ?? p.mean);
        yMax = Math.max(yMax, p.hi ?? p.mean);
      }
    }
  }
  if (!Number.isFinite(xMin)) {
    return { x: [0, 1], y: [0, 1] };
  }
  return { x: padded(xMin, xMax), y: padded(yMin, yMax) };
}

/** Render mean cumulative-regret curves with 95% bands, one panel per group. */
export function renderRegret(records: RegretRecord[], groupBy: GroupBy = "agent"): string {
  const panels = summarizePanels(records, groupBy);
  const panelNames = panels.size > 0 ? [...panels.keys()] : ["no data"];
  const { x, y } = curveExtents(panels);

  const labels = [...panels.values()].flatMap((curves) => curves.map((c) => c.label));
  const colorOf = new Map([...labels].sort().map((l, i) => [l, PALETTE[i % PALETTE.length]!]));

  const height = TITLE_HEIGHT + panelNames.length * PANEL_BLOCK + 6;
  const body: string[] = [
    text(PLOT_LEFT, 20, "Cumulative regret (mean, 95% band)", "start", ' font-weight="bold"'),
  ];

  panelNames.forEach((name, index) => {
    const blockTop = TITLE_HEIGHT + index * PANEL_BLOCK;
    const plotTop = blockTop + PANEL_LABEL_HEIGHT;
    const xScale = linearScale(x, [PLOT_LEFT, PLOT_RIGHT]);
    const yScale = linearScale(y, [plotTop + PANEL_PLOT_HEIGHT, plotTop]);

    body.push(text(PLOT_LEFT, blockTop + 14, name, "start", ' font-style="italic"'));
    body.push(...frameAndAxes(plotTop, xScale, yScale, "period", "cumulative regret"));

    const curves = panels.get(name) ?? [];
    for (const curve of curves) {
      const color = colorOf.get(curve.label)!;
      const shaded = curve.points.filter((p) => p.lo !== null && p.hi !== null);
      if (shaded.length > 1) {
        const upper = shaded.map((p) => [xScale(p.period), yScale(p.hi!)] as [number, number]);
        const lower = [...shaded]
          .reverse()
          .map((p) => [xScale(p.period), yScale(p.lo!)] as [number, number]);
        body.push(band([...upper, ...lower], color));
      }
      body.push(
        polyline(
          curve.points.map((p) => [xScale(p.period), yScale(p.mean)]),
          color,
        ),
      );
    }
    curves.forEach((curve, i) => {
      const color = colorOf.get(curve.label)!;
      const ly = plotTop + 16 + i * 16;
      body.push(line(PLOT_LEFT + 10, ly - 4, PLOT_LEFT + 28, ly - 4, color, 2));
      body.push(text(PLOT_LEFT + 34, ly, curve.label));
    });
  });

  return document(WIDTH, height, body);
}

/** Render a solver-traced rate-distortion curve with satisficing markers. */
export function renderRd(records: RdRecord[]): string {
  const solver = records
    .filter((r) => r.method === "ba")
    .sort((a, b) => a.distortion - b.distortion || a.rateBits - b.rateBits);
  const satisficing = records
    .filter((r) => r.method === "sts")
    .sort((a, b) => a.param - b.param);

  const all = [...solver, ...satisficing];
  const x =
    all.length > 0
      ? padded(Math.min(...all.map((r) => r.distortion)), Math.max(...all.map((r) => r.distortion)))
      : ([0, 1] as [number, number]);
  const y =
    all.length > 0
      ? padded(Math.min(...all.map((r) => r.rateBits)), Math.max(...all.map((r) => r.rateBits)))
      : ([0, 1] as [number, number]);

  const plotTop = TITLE_HEIGHT + 8;
  const height = plotTop + PANEL_PLOT_HEIGHT + PANEL_FOOTER + 6;
  const xScale = linearScale(x, [PLOT_LEFT, PLOT_RIGHT]);
  const yScale = linearScale(y, [plotTop + PANEL_PLOT_HEIGHT, plotTop]);

  const solverColor = PALETTE[0]!;
  const markerColor = PALETTE[1]!;
  const body: string[] = [
    text(PLOT_LEFT, 20, "Learning-target rate vs distortion", "start", ' font-weight="bold"'),
    ...frameAndAxes(
      plotTop,
      xScale,
      yScale,
      "distortion (expected squared regret)",
      "rate (bits)",
    ),
  ];

  if (solver.length > 1) {
    body.push(
      polyline(
        solver.map((r) => [xScale(r.distortion), yScale(r.rateBits)]),
        solverColor,
      ),
    );
  }
  for (const r of solver) {
    body.push(circle(xScale(r.distortion), yScale(r.rateBits), 2.6, solverColor));
  }
  for (const r of satisficing) {
    const px = xScale(r.distortion);
    const py = yScale(r.rateBits);
    body.push(diamond(px, py, 4.2, markerColor));
    body.push(text(px + 7, py - 7, `eps=${tickLabel(r.param)}`));
  }

  let ly = plotTop + 16;
  if (solver.length > 0) {
    body.push(line(PLOT_RIGHT - 150, ly - 4, PLOT_RIGHT - 132, ly - 4, solverColor, 2));
    body.push(circle(PLOT_RIGHT - 141, ly - 4, 2.6, solverColor));
    body.push(text(PLOT_RIGHT - 126, ly, "solver sweep"));
    ly += 16;
  }
  if (satisficing.length > 0) {
    body.push(diamond(PLOT_RIGHT - 141, ly - 4, 4.2, markerColor));
    body.push(text(PLOT_RIGHT - 126, ly, "satisficing (eps)"));
  }

  return document(WIDTH, height, body);
}
