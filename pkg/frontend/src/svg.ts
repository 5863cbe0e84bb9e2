/**
 * Minimal deterministic SVG building blocks.
 *
 * Every coordinate is formatted with a fixed number of decimals and every
 * style lives in constants below, so identical data always yields an
 * identical document — a requirement for golden-file testing and review
 * diffs. No timestamps, random ids, or environment-dependent values.
 */

/** Okabe-Ito-style palette, readable under common color-vision deficiencies. */
export const PALETTE = [
  "#0072b2",
  "#d55e00",
  "#009e73",
  "#cc79a7",
  "#e69f00",
  "#56b4e9",
  "#999999",
] as const;

export const FONT = "12px sans-serif";

/** Fixed-decimal coordinate formatting; normalizes negative zero. */
export function fmt(value: number): string {
  const text = value.toFixed(2);
  return text === "-0.00" ? "0.00" : text;
}

/** Escape a string for use in SVG text nodes and attribute values. */
export function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export interface LinearScale {
  (value: number): number;
  domain: [number, number];
}

/** Affine map from a data domain onto pixel coordinates. */
export function linearScale(
  domain: [number, number],
  range: [number, number],
): LinearScale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0;
  const apply = ((value: number) =>
    span === 0 ? (r0 + r1) / 2 : r0 + ((value - d0) / span) * (r1 - r0)) as LinearScale;
  apply.domain = domain;
  return apply;
}

/** Pad a data extent by 4% on each side; widen degenerate extents. */
export function padded(min: number, max: number): [number, number] {
  if (min === max) {
    const bump = min === 0 ? 1 : Math.abs(min) * 0.1;
    return [min - bump, max + bump];
  }
  const pad = (max - min) * 0.04;
  return [min - pad, max + pad];
}

/** Round tick positions covering [min, max] with a 1/2/5 step ladder. */
export function niceTicks(min: number, max: number, target = 5): number[] {
  if (!(max > min)) {
    return [min];
  }
  const rawStep = (max - min) / target;
  const magnitude = 10 ** Math.floor(Math.log10(rawStep));
  let step = magnitude * 10;
  for (const multiple of [1, 2, 5]) {
    if (magnitude * multiple >= rawStep) {
      step = magnitude * multiple;
      break;
    }
  }
  const ticks: number[] = [];
  for (let v = Math.ceil(min / step) * step; v <= max + step * 1e-9; v += step) {
    ticks.push(v);
  }
  return ticks;
}

/** Short, stable label for a tick value (shortest round-trip form). */
export function tickLabel(value: number): string {
  const rounded = Number(value.toPrecision(10));
  return String(rounded === 0 ? 0 : rounded);
}

/** One polyline through (x, y) pixel pairs. */
export function polyline(points: Array<[number, number]>, stroke: string): string {
  const path = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
  return `<polyline fill="none" stroke="${stroke}" stroke-width="1.6" points="${path}"/>`;
}

/** Closed translucent band (confidence region). */
export function band(points: Array<[number, number]>, fill: string): string {
  const path = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
  return `<polygon fill="${fill}" fill-opacity="0.18" stroke="none" points="${path}"/>`;
}

export function circle(x: number, y: number, r: number, fill: string): string {
  return `<circle cx="${fmt(x)}" cy="${fmt(y)}" r="${fmt(r)}" fill="${fill}"/>`;
}

/** Diamond marker centered on (x, y). */
export function diamond(x: number, y: number, r: number, stroke: string): string {
  const path = [
    [x, y - r],
    [x + r, y],
    [x, y + r],
    [x - r, y],
  ]
    .map(([px, py]) => `${fmt(px!)},${fmt(py!)}`)
    .join(" ");
  return `<polygon fill="white" stroke="${stroke}" stroke-width="1.6" points="${path}"/>`;
}

export function text(
  x: number,
  y: number,
  content: string,
  anchor: "start" | "middle" | "end" = "start",
  extra = "",
): string {
  return (
    `<text x="${fmt(x)}" y="${fmt(y)}" text-anchor="${anchor}" ` +
    `font-family="sans-serif" font-size="12"${extra}>${esc(content)}</text>`
  );
}

export function line(
  x1: number,
  y1: number,
  x2: number,
  y2: number,
  stroke: string,
  width = 1,
): string {
  return (
    `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ` +
    `stroke="${stroke}" stroke-width="${width}"/>`
  );
}

/** Wrap body elements in a complete standalone SVG document. */
export function document(width: number, height: number, body: string[]): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}">`,
    `<rect width="${width}" height="${height}" fill="white"/>`,
    ...body,
    "</svg>",
    "",
  ].join("\n");
}
