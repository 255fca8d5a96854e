/** SVG charts: n against correlation (with uncertainty band, category
 * shading and the design marker) and achieved power against correlation.
 *
 * Every plotted point also gets an invisible-ish dot carrying the raw API
 * values in data attributes and a <title>, which is both the hover
 * full-precision affordance and what the tests read back.
 */

import type { CurvePoint, RecommendationRow } from './api';
import { fullPrecision, fmt2, fmtN } from './format';

const NS = 'http://www.w3.org/2000/svg';

export const WIDTH = 640;
export const HEIGHT = 360;
const MARGIN = { top: 16, right: 16, bottom: 36, left: 56 };

export interface Scale {
  (value: number): number;
  domain: [number, number];
}

function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const scale = ((value: number) => r0 + ((value - d0) / span) * (r1 - r0)) as Scale;
  scale.domain = domain;
  return scale;
}

function el<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  return node;
}

function polylinePoints(xs: number[], ys: number[]): string {
  return xs.map((x, i) => `${x},${ys[i]}`).join(' ');
}

function axes(svg: SVGSVGElement, x: Scale, y: Scale, yLabel: string): void {
  const left = MARGIN.left;
  const right = WIDTH - MARGIN.right;
  const bottom = HEIGHT - MARGIN.bottom;
  svg.append(
    el('line', { x1: `${left}`, y1: `${bottom}`, x2: `${right}`, y2: `${bottom}`, class: 'axis' }),
    el('line', { x1: `${left}`, y1: `${MARGIN.top}`, x2: `${left}`, y2: `${bottom}`, class: 'axis' })
  );
  for (const rho of [x.domain[0], (x.domain[0] + x.domain[1]) / 2, x.domain[1]]) {
    const label = el('text', { x: `${x(rho)}`, y: `${bottom + 24}`, class: 'tick', 'text-anchor': 'middle' });
    label.textContent = fmt2(rho);
    svg.append(label);
  }
  for (const value of [y.domain[0], y.domain[1]]) {
    const label = el('text', { x: `${left - 8}`, y: `${y(value) + 4}`, class: 'tick', 'text-anchor': 'end' });
    label.textContent = yLabel === 'n' ? fmtN(Math.round(value)) : fmt2(value);
    svg.append(label);
  }
  const caption = el('text', {
    x: `${(left + right) / 2}`,
    y: `${HEIGHT - 4}`,
    class: 'axis-label',
    'text-anchor': 'middle',
  });
  caption.textContent = 'correlation';
  svg.append(caption);
}

function dot(
  svg: SVGSVGElement,
  cx: number,
  cy: number,
  data: Record<string, number>,
  className: string
): void {
  const point = el('circle', { cx: `${cx}`, cy: `${cy}`, r: '3', class: className });
  for (const [key, value] of Object.entries(data)) {
    point.dataset[key] = fullPrecision(value);
  }
  const title = document.createElementNS(NS, 'title');
  title.textContent = Object.entries(data)
    .map(([key, value]) => `${key}=${fullPrecision(value)}`)
    .join(', ');
  point.append(title);
  svg.append(point);
}

/** Marker plus category separators come from the recommend response so the
 * chart stays consistent with the table next to it. */
export function renderCurveChart(
  curve: CurvePoint[],
  rows: RecommendationRow[],
  selected: RecommendationRow | undefined
): SVGSVGElement {
  const svg = el('svg', {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    class: 'chart curve-chart',
    role: 'img',
  });
  if (curve.length === 0) return svg;

  const rhos = curve.map((p) => p.rho);
  const highs = curve.map((p) => p.n_high);
  const lows = curve.map((p) => p.n_low);
  const x = linearScale([rhos[0], rhos[rhos.length - 1]], [MARGIN.left, WIDTH - MARGIN.right]);
  let nMin = Math.min(...lows);
  let nMax = Math.max(...highs);
  if (selected) {
    nMin = Math.min(nMin, selected.n_total);
    nMax = Math.max(nMax, selected.n_total);
  }
  const pad = (nMax - nMin || 1) * 0.05;
  const y = linearScale([nMin - pad, nMax + pad], [HEIGHT - MARGIN.bottom, MARGIN.top]);

  // shaded uncertainty band between n_low and n_high; collapses to nothing
  // when the rates are points (low == point == high)
  const hasBand = curve.some((p) => p.n_high !== p.n_low);
  if (hasBand) {
    const forward = curve.map((p) => `${x(p.rho)},${y(p.n_high)}`);
    const back = [...curve].reverse().map((p) => `${x(p.rho)},${y(p.n_low)}`);
    svg.append(el('polygon', { points: [...forward, ...back].join(' '), class: 'band' }));
  }

  // vertical separators at the weak and moderate upper endpoints
  const byCategory = new Map(rows.map((r) => [r.category, r]));
  for (const name of ['weak', 'moderate'] as const) {
    const row = byCategory.get(name);
    if (!row) continue;
    const cx = x(row.rho_interval[1]);
    const line = el('line', {
      x1: `${cx}`,
      y1: `${MARGIN.top}`,
      x2: `${cx}`,
      y2: `${HEIGHT - MARGIN.bottom}`,
      class: 'separator',
    });
    line.dataset.category = name;
    line.dataset.rho = fullPrecision(row.rho_interval[1]);
    svg.append(line);
  }

  svg.append(
    el('polyline', {
      points: polylinePoints(curve.map((p) => x(p.rho)), curve.map((p) => y(p.n_point))),
      class: 'line n-line',
      fill: 'none',
    })
  );
  for (const p of curve) {
    dot(svg, x(p.rho), y(p.n_point), { rho: p.rho, n: p.n_point, nLow: p.n_low, nHigh: p.n_high }, 'pt curve-pt');
  }

  // design marker: the selected category sizes at its interval's right edge
  if (selected) {
    dot(svg, x(selected.design_rho), y(selected.n_total), { rho: selected.design_rho, n: selected.n_total }, 'marker');
  }

  axes(svg, x, y, 'n');
  return svg;
}

export interface PowerPoint {
  rho: number;
  power: number;
}

export function renderPowerChart(
  points: PowerPoint[],
  target: number,
  selected: RecommendationRow | undefined
): SVGSVGElement {
  const svg = el('svg', {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    class: 'chart power-chart',
    role: 'img',
  });
  if (points.length === 0) return svg;

  const rhos = points.map((p) => p.rho);
  if (selected) rhos.push(selected.design_rho);
  const x = linearScale([Math.min(...rhos), Math.max(...rhos)], [MARGIN.left, WIDTH - MARGIN.right]);
  const values = points.map((p) => p.power).concat(target);
  if (selected) values.push(selected.achieved_power_at_design);
  const lo = Math.min(...values);
  const hi = Math.max(...values);
  const pad = (hi - lo || 1) * 0.1;
  const y = linearScale([lo - pad, hi + pad], [HEIGHT - MARGIN.bottom, MARGIN.top]);

  const targetLine = el('line', {
    x1: `${MARGIN.left}`,
    y1: `${y(target)}`,
    x2: `${WIDTH - MARGIN.right}`,
    y2: `${y(target)}`,
    class: 'target',
  });
  targetLine.dataset.power = fullPrecision(target);
  svg.append(targetLine);

  svg.append(
    el('polyline', {
      points: polylinePoints(points.map((p) => x(p.rho)), points.map((p) => y(p.power))),
      class: 'line power-line',
      fill: 'none',
    })
  );
  for (const p of points) {
    dot(svg, x(p.rho), y(p.power), { rho: p.rho, power: p.power }, 'pt power-pt');
  }
  if (selected) {
    dot(
      svg,
      x(selected.design_rho),
      y(selected.achieved_power_at_design),
      { rho: selected.design_rho, power: selected.achieved_power_at_design },
      'marker'
    );
  }

  axes(svg, x, y, 'power');
  return svg;
}

export function renderChartMessage(message: string): HTMLElement {
  const box = document.createElement('div');
  box.className = 'chart-empty';
  box.textContent = message;
  return box;
}
