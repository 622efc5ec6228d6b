/**
 * Minimal SVG line chart for observed vs forecast series.
 *
 * Observed points draw as a solid path, forecast points as a dashed path,
 * separated by a vertical rule at the forecast start. Every plotted value
 * comes straight from the API payload.
 */

import type { SeriesPoint } from './types';

const SVG_NS = 'http://www.w3.org/2000/svg';

export interface ChartSpec {
  observed: SeriesPoint[];
  forecast: SeriesPoint[];
  width?: number;
  height?: number;
}

function el(name: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, name);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  return node;
}

export function renderChart(spec: ChartSpec): SVGSVGElement {
  const width = spec.width ?? 640;
  const height = spec.height ?? 280;
  const pad = 36;
  const all = [...spec.observed, ...spec.forecast];

  const svg = el('svg', {
    viewBox: `0 0 ${width} ${height}`,
    width: String(width),
    height: String(height),
    class: 'series-chart',
  }) as SVGSVGElement;
  if (all.length === 0) return svg;

  const values = all.map((p) => p.value);
  const vMin = Math.min(0, ...values);
  const vMax = Math.max(...values, 1);
  const n = all.length;
  const x = (i: number) => pad + (i / Math.max(n - 1, 1)) * (width - 2 * pad);
  const y = (v: number) =>
    height - pad - ((v - vMin) / (vMax - vMin || 1)) * (height - 2 * pad);

  const pathFor = (points: SeriesPoint[], offset: number): string =>
    points
      .map((p, i) => `${i === 0 ? 'M' : 'L'}${x(offset + i).toFixed(1)},${y(p.value).toFixed(1)}`)
      .join(' ');

  svg.appendChild(el('line', {
    x1: String(pad), y1: String(height - pad),
    x2: String(width - pad), y2: String(height - pad),
    class: 'axis',
  }));

  if (spec.observed.length > 0) {
    svg.appendChild(el('path', {
      d: pathFor(spec.observed, 0),
      class: 'observed-line',
      fill: 'none',
    }));
  }

  // vertical rule at the forecast start
  if (spec.forecast.length > 0) {
    const ruleX = x(spec.observed.length > 0 ? spec.observed.length - 0.5 : 0);
    svg.appendChild(el('line', {
      x1: String(ruleX), y1: String(pad / 2),
      x2: String(ruleX), y2: String(height - pad),
      class: 'forecast-start-rule',
      'data-role': 'forecast-start',
    }));
    svg.appendChild(el('path', {
      d: pathFor(spec.forecast, spec.observed.length),
      class: 'forecast-line',
      fill: 'none',
    }));
    for (let i = 0; i < spec.forecast.length; i++) {
      svg.appendChild(el('circle', {
        cx: x(spec.observed.length + i).toFixed(1),
        cy: y(spec.forecast[i].value).toFixed(1),
        r: '2.5',
        class: 'forecast-point',
        'data-date': spec.forecast[i].date,
      }));
    }
  }

  return svg;
}
