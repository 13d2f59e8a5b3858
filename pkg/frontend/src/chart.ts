/**
 * Dual-axis spectrum chart, rendered as plain SVG.
 *
 * Bars: raw backward-citation counts per reference grant year (left axis).
 * Line: smoothed rendering of the active score series (right axis); the
 * smoothing is purely visual — data points and tooltips carry exact values.
 * Hovering a year shows both axis values; clicking opens the year's
 * most-referenced patent document.
 */

import { formatCount, formatScore } from "./format";
import type { SpectrumResponse, YearEntry } from "./types";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface Margin {
  top: number;
  right: number;
  bottom: number;
  left: number;
}

export interface ChartLayout {
  width: number;
  height: number;
  margin: Margin;
  plotWidth: number;
  plotHeight: number;
  barX(index: number): number;
  barWidth: number;
  yLeft(count: number): number;
  yRight(score: number): number;
  leftTicks: number[];
  rightTicks: number[];
  scoreMin: number;
  scoreMax: number;
}

export function activeScore(entry: YearEntry, mode: "pcs" | "rpys"): number {
  return mode === "rpys" ? entry.f_value : entry.pcs_value;
}

export function niceTicks(min: number, max: number, count = 4): number[] {
  if (max === min) return [min];
  const span = max - min;
  const rawStep = span / count;
  const magnitude = 10 ** Math.floor(Math.log10(rawStep));
  const residual = rawStep / magnitude;
  const step = (residual >= 5 ? 10 : residual >= 2 ? 5 : residual >= 1 ? 2 : 1) * magnitude;
  const start = Math.ceil(min / step) * step;
  const ticks: number[] = [];
  for (let tick = start; tick <= max + 1e-9; tick += step) {
    ticks.push(Number(tick.toPrecision(12)));
  }
  return ticks;
}

export function computeLayout(
  entries: YearEntry[],
  mode: "pcs" | "rpys",
  width = 900,
  height = 360,
): ChartLayout {
  const margin: Margin = { top: 16, right: 64, bottom: 40, left: 64 };
  const plotWidth = width - margin.left - margin.right;
  const plotHeight = height - margin.top - margin.bottom;
  const n = Math.max(entries.length, 1);
  const slot = plotWidth / n;
  const barWidth = Math.max(1, slot * 0.7);

  const maxCount = Math.max(1, ...entries.map((e) => e.c_total));
  const scores = entries.map((e) => activeScore(e, mode));
  const scoreMax = Math.max(0, ...scores);
  const scoreMin = Math.min(0, ...scores);
  const scoreSpan = scoreMax - scoreMin || 1;

  return {
    width,
    height,
    margin,
    plotWidth,
    plotHeight,
    barX: (index) => margin.left + index * slot + (slot - barWidth) / 2,
    barWidth,
    yLeft: (count) => margin.top + plotHeight * (1 - count / maxCount),
    yRight: (score) => margin.top + plotHeight * (1 - (score - scoreMin) / scoreSpan),
    leftTicks: niceTicks(0, maxCount),
    rightTicks: niceTicks(scoreMin, scoreMax),
    scoreMin,
    scoreMax,
  };
}

/** Catmull-Rom spline through the exact data points, emitted as cubic beziers. */
export function smoothPath(points: Array<{ x: number; y: number }>): string {
  if (points.length === 0) return "";
  if (points.length === 1) return `M${points[0].x},${points[0].y}`;
  const path: string[] = [`M${points[0].x},${points[0].y}`];
  for (let i = 0; i < points.length - 1; i++) {
    const p0 = points[Math.max(0, i - 1)];
    const p1 = points[i];
    const p2 = points[i + 1];
    const p3 = points[Math.min(points.length - 1, i + 2)];
    const c1x = p1.x + (p2.x - p0.x) / 6;
    const c1y = p1.y + (p2.y - p0.y) / 6;
    const c2x = p2.x - (p3.x - p1.x) / 6;
    const c2y = p2.y - (p3.y - p1.y) / 6;
    path.push(`C${c1x},${c1y} ${c2x},${c2y} ${p2.x},${p2.y}`);
  }
  return path.join(" ");
}

function el<K extends keyof SVGElementTagNameMap>(
  name: K,
  attrs: Record<string, string | number> = {},
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, name);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, String(value));
  }
  return node;
}

export interface ChartHandlers {
  openYear(entry: YearEntry): void;
}

export function renderChart(
  container: HTMLElement,
  response: SpectrumResponse,
  mode: "pcs" | "rpys",
  handlers: ChartHandlers,
): void {
  container.replaceChildren();
  const entries = response.years;
  const layout = computeLayout(entries, mode);

  const svg = el("svg", {
    viewBox: `0 0 ${layout.width} ${layout.height}`,
    role: "img",
    class: "spectrum-chart",
  });

  // axes
  const axisY = layout.margin.top + layout.plotHeight;
  svg.append(
    el("line", {
      x1: layout.margin.left, y1: axisY,
      x2: layout.margin.left + layout.plotWidth, y2: axisY,
      class: "axis",
    }),
  );
  for (const tick of layout.leftTicks) {
    const y = layout.yLeft(tick);
    const label = el("text", { x: layout.margin.left - 8, y: y + 4, class: "tick tick-left" });
    label.textContent = formatCount(tick);
    svg.append(label);
  }
  for (const tick of layout.rightTicks) {
    const y = layout.yRight(tick);
    const label = el("text", {
      x: layout.margin.left + layout.plotWidth + 8, y: y + 4,
      class: "tick tick-right",
    });
    label.textContent = formatScore(tick);
    svg.append(label);
  }

  const tooltip = document.createElement("div");
  tooltip.className = "chart-tooltip";
  tooltip.hidden = true;

  const labelEvery = Math.max(1, Math.ceil(entries.length / 14));
  entries.forEach((entry, index) => {
    const score = activeScore(entry, mode);
    const x = layout.barX(index);

    const bar = el("rect", {
      x, width: layout.barWidth,
      y: layout.yLeft(entry.c_total),
      height: Math.max(0, axisY - layout.yLeft(entry.c_total)),
      class: "bar",
    });
    svg.append(bar);

    if (index % labelEvery === 0) {
      const label = el("text", {
        x: x + layout.barWidth / 2, y: axisY + 16, class: "tick tick-x",
      });
      label.textContent = String(entry.year);
      svg.append(label);
    }

    // transparent full-height hit target carrying the exact values
    const hit = el("rect", {
      x: layout.barX(index) - 1,
      y: layout.margin.top,
      width: layout.barWidth + 2,
      height: layout.plotHeight,
      class: entry.document_url ? "hit clickable" : "hit",
      "data-year": entry.year,
      "data-c-total": entry.c_total,
      "data-score": score,
    });
    hit.addEventListener("mouseenter", () => {
      tooltip.textContent =
        `${entry.year} — citations: ${formatCount(entry.c_total)}, ` +
        `score: ${formatScore(score)}`;
      tooltip.hidden = false;
    });
    hit.addEventListener("mouseleave", () => {
      tooltip.hidden = true;
    });
    hit.addEventListener("click", () => {
      if (entry.document_url) handlers.openYear(entry);
    });
    svg.append(hit);
  });

  const linePoints = entries.map((entry, index) => ({
    x: layout.barX(index) + layout.barWidth / 2,
    y: layout.yRight(activeScore(entry, mode)),
  }));
  svg.append(el("path", { d: smoothPath(linePoints), class: "score-line" }));

  container.append(svg, tooltip);
}
