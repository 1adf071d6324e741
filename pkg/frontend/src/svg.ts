// Deterministic SVG scene assembly: fixed layout, fixed palette, no
// randomness and no environment lookups, so identical input bytes give
// identical output bytes.
import { scaleLinear } from "d3-scale";
import { line as d3Line } from "d3-shape";

export interface Series {
  label: string;
  color: string;
  dash?: string;
  x: number[];
  y: number[];
}

export interface Scene {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
  /** optional horizontal reference line, in y units */
  rule?: number;
}

const WIDTH = 720;
const HEIGHT = 480;
const MARGIN = { top: 48, right: 24, bottom: 56, left: 72 };

const round2 = (v: number): number => Math.round(v * 100) / 100;

function escapeText(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return [lo, hi];
}

export function renderScene(scene: Scene): string {
  if (scene.series.length === 0) {
    throw new Error("a scene needs at least one series");
  }
  const xs = scene.series.flatMap((s) => s.x);
  const ys = scene.series.flatMap((s) => s.y);
  if (scene.rule !== undefined) ys.push(scene.rule);

  const [x0, x1] = extent(xs);
  const [y0, y1] = extent(ys);
  const sx = scaleLinear()
    .domain(x0 === x1 ? [x0 - 1, x1 + 1] : [x0, x1])
    .range([MARGIN.left, WIDTH - MARGIN.right])
    .nice();
  const sy = scaleLinear()
    .domain(y0 === y1 ? [y0 - 1, y1 + 1] : [y0, y1])
    .range([HEIGHT - MARGIN.bottom, MARGIN.top])
    .nice();

  const out: string[] = [];
  out.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
      `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif">`,
  );
  out.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  out.push(
    `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="15">` +
      `${escapeText(scene.title)}</text>`,
  );

  // axes with d3's tick choices, drawn by hand
  const xTicks = sx.ticks(7);
  const yTicks = sy.ticks(6);
  const fmtX = sx.tickFormat(7);
  const fmtY = sy.tickFormat(6);
  out.push(`<g class="axes" stroke="#000" fill="none" stroke-width="1">`);
  out.push(
    `<path d="M${MARGIN.left},${MARGIN.top} V${HEIGHT - MARGIN.bottom} ` +
      `H${WIDTH - MARGIN.right}"/>`,
  );
  for (const t of xTicks) {
    const px = round2(sx(t));
    out.push(`<line x1="${px}" y1="${HEIGHT - MARGIN.bottom}" x2="${px}" y2="${HEIGHT - MARGIN.bottom + 5}"/>`);
  }
  for (const t of yTicks) {
    const py = round2(sy(t));
    out.push(`<line x1="${MARGIN.left - 5}" y1="${py}" x2="${MARGIN.left}" y2="${py}"/>`);
  }
  out.push(`</g>`);

  out.push(`<g class="tick-labels" font-size="11" fill="#000">`);
  for (const t of xTicks) {
    const px = round2(sx(t));
    out.push(
      `<text x="${px}" y="${HEIGHT - MARGIN.bottom + 18}" text-anchor="middle">` +
        `${escapeText(fmtX(t))}</text>`,
    );
  }
  for (const t of yTicks) {
    const py = round2(sy(t));
    out.push(
      `<text x="${MARGIN.left - 9}" y="${py + 4}" text-anchor="end">` +
        `${escapeText(fmtY(t))}</text>`,
    );
  }
  out.push(`</g>`);

  out.push(
    `<text x="${(MARGIN.left + WIDTH - MARGIN.right) / 2}" y="${HEIGHT - 14}" ` +
      `text-anchor="middle" font-size="13">${escapeText(scene.xLabel)}</text>`,
  );
  out.push(
    `<text x="20" y="${(MARGIN.top + HEIGHT - MARGIN.bottom) / 2}" ` +
      `text-anchor="middle" font-size="13" ` +
      `transform="rotate(-90 20 ${(MARGIN.top + HEIGHT - MARGIN.bottom) / 2})">` +
      `${escapeText(scene.yLabel)}</text>`,
  );

  // one axes, every run drawn into it
  out.push(`<g class="plot" fill="none" stroke-width="1.5">`);
  if (scene.rule !== undefined) {
    const py = round2(sy(scene.rule));
    out.push(
      `<line class="rule" x1="${MARGIN.left}" y1="${py}" ` +
        `x2="${WIDTH - MARGIN.right}" y2="${py}" stroke="#999" ` +
        `stroke-dasharray="2,3"/>`,
    );
  }
  const toPath = d3Line<[number, number]>()
    .x((d) => round2(sx(d[0])))
    .y((d) => round2(sy(d[1])));
  for (const s of scene.series) {
    if (s.x.length !== s.y.length) {
      throw new Error(`series "${s.label}": x and y lengths differ`);
    }
    const points = s.x.map((v, i) => [v, s.y[i]!] as [number, number]);
    const d = toPath(points);
    const dash = s.dash !== undefined ? ` stroke-dasharray="${s.dash}"` : "";
    out.push(`<path class="series" d="${d}" stroke="${s.color}"${dash}/>`);
  }
  out.push(`</g>`);

  // legend, top-right corner of the plot area
  out.push(`<g class="legend" font-size="12">`);
  scene.series.forEach((s, i) => {
    const ly = MARGIN.top + 14 + 18 * i;
    const lx = WIDTH - MARGIN.right - 190;
    const dash = s.dash !== undefined ? ` stroke-dasharray="${s.dash}"` : "";
    out.push(
      `<line x1="${lx}" y1="${ly - 4}" x2="${lx + 22}" y2="${ly - 4}" ` +
        `stroke="${s.color}" stroke-width="1.5"${dash}/>`,
    );
    out.push(`<text x="${lx + 28}" y="${ly}">${escapeText(s.label)}</text>`);
  });
  out.push(`</g>`);

  out.push(`</svg>`);
  return out.join("\n") + "\n";
}
