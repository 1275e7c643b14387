/** Build a positioned scene graph from an engine snapshot. Rendering to
 * an actual canvas element and hit-testing both read this structure, so
 * what is drawn and what is hit can never disagree. */

import { CANVAS, Rect } from "./layout";
import {
  BandScale,
  LinearScale,
  apply,
  band,
  bandStart,
  bandWidth,
  linear,
} from "./scales";
import { ChartType, Snapshot } from "./types";

export const PLOT = {
  x0: CANVAS.x + 20,
  x1: CANVAS.x + CANVAS.w - 20,
  yBottom: CANVAS.y + CANVAS.h - 20,
  yTop: CANVAS.y + 20,
};

export interface SceneShape {
  markId: string;
  kind: "rect" | "point" | "polyline";
  bounds: Rect; // hit handle; for polylines a box on the first vertex
  points?: [number, number][];
  selected: boolean;
  faded: boolean;
}

export interface PcpAxis {
  index: number;
  attribute: string;
  px: number;
  scale: LinearScale;
}

export interface Scene {
  chartType: ChartType | null;
  shapes: SceneShape[];
  pills: string[];
  xTitle: string | null;
  yTitles: string[];
  legendTitle: string | null;
  legendItems: string[];
  filterChips: string[];
  xScale: LinearScale | null;
  yScale: LinearScale | null;
  xBand: BandScale | null;
  pcpAxes: PcpAxis[];
}

const HANDLE = 8; // hit handle size for point-like marks

function handleRect(cx: number, cy: number): Rect {
  return { x: cx - HANDLE / 2, y: cy - HANDLE / 2, w: HANDLE, h: HANDLE };
}

function chipLabel(f: Record<string, any>): string {
  if (f.type === "category") return `${f.attribute} − ${f.excluded.length}`;
  if (f.type === "ids") return `${f.keep ? "keep" : "drop"} ${f.ids.length} rows`;
  const lo = f.lo === null ? "" : `${f.lo} ${f.lo_open ? "<" : "≤"} `;
  const hi = f.hi === null ? "" : ` ${f.hi_open ? "<" : "≤"} ${f.hi}`;
  return `${f.keep ? "keep" : "drop"} ${lo}${f.attribute}${hi}`;
}

export function render(snapshot: Snapshot, pills: string[]): Scene {
  const view = snapshot.view;
  const anySelected = snapshot.selection.ids.length > 0;
  const scene: Scene = {
    chartType: view.chart_type,
    shapes: [],
    pills,
    xTitle: snapshot.spec.x,
    yTitles: snapshot.spec.y,
    legendTitle: view.legend_attribute ?? (view.legend.length ? "Series" : null),
    legendItems: view.legend.map(String),
    filterChips: snapshot.spec.filters.map(chipLabel),
    xScale: null,
    yScale: null,
    xBand: null,
    pcpAxes: [],
  };
  const ct = view.chart_type;
  if (ct === null) return scene;

  const push = (markId: string, kind: SceneShape["kind"], bounds: Rect,
                selected: boolean, points?: [number, number][]) => {
    scene.shapes.push({
      markId, kind, bounds, points,
      selected,
      faded: anySelected && !selected,
    });
  };

  if (ct === "bar" || ct === "grouped_bar" || ct === "stacked_bar") {
    const [xAxis, yAxis] = view.axes;
    scene.xBand = band(xAxis.domain, PLOT.x0, PLOT.x1);
    const [lo, hi] = yAxis.domain as number[];
    let top = hi;
    if (ct === "stacked_bar") {
      // the axis domain covers single segments; stacks need their sums
      const sums = new Map<string, number>();
      for (const m of view.marks) {
        const cat = String(m.channels.category);
        sums.set(cat, (sums.get(cat) ?? 0) + (m.channels.value as number));
      }
      top = Math.max(hi, ...sums.values());
    }
    scene.yScale = linear(lo, top, PLOT.yBottom, PLOT.yTop);
    const series = view.legend_attribute === null ? view.legend.map(String) : [];
    const lanes = Math.max(series.length, 1);
    const bw = bandWidth(scene.xBand);
    const laneW = (bw * 0.8) / lanes;
    const bottoms = new Map<string, number>();
    for (const m of view.marks) {
      const cat = String(m.channels.category);
      const value = m.channels.value as number;
      const x0 = bandStart(scene.xBand, cat) + bw * 0.1;
      let rect: Rect;
      if (ct === "stacked_bar") {
        const base = bottoms.get(cat) ?? 0;
        const top = apply(scene.yScale, base + value);
        const bot = apply(scene.yScale, base);
        bottoms.set(cat, base + value);
        rect = { x: x0, y: top, w: bw * 0.8, h: bot - top };
      } else {
        const lane = series.length
          ? series.indexOf(String(m.channels.series))
          : 0;
        const top = apply(scene.yScale, value);
        rect = {
          x: x0 + Math.max(lane, 0) * laneW,
          y: top,
          w: laneW,
          h: PLOT.yBottom - top,
        };
      }
      push(m.id, "rect", rect, m.selected);
    }
  } else if (ct === "histogram") {
    const [xAxis, yAxis] = view.axes;
    const [lo, hi] = xAxis.domain as number[];
    const [clo, chi] = yAxis.domain as number[];
    scene.xScale = linear(lo, hi, PLOT.x0, PLOT.x1);
    scene.yScale = linear(clo, chi, PLOT.yBottom, PLOT.yTop);
    for (const m of view.marks) {
      const x0 = apply(scene.xScale, m.channels.x0);
      const x1 = apply(scene.xScale, m.channels.x1);
      const top = apply(scene.yScale, m.channels.count);
      push(m.id, "rect",
           { x: x0, y: top, w: x1 - x0, h: PLOT.yBottom - top }, m.selected);
    }
  } else if (ct === "scatter" || ct === "line") {
    const xAxis = view.axes[0];
    const yAxis = view.axes[1];
    const [xlo, xhi] = xAxis.domain as number[];
    const [ylo, yhi] = yAxis.domain as number[];
    scene.xScale = linear(xlo, xhi, PLOT.x0, PLOT.x1);
    scene.yScale = linear(ylo, yhi, PLOT.yBottom, PLOT.yTop);
    for (const m of view.marks) {
      const vy = ct === "line" ? m.channels.value : m.channels.y;
      const cx = apply(scene.xScale, m.channels.x);
      const cy = apply(scene.yScale, vy);
      push(m.id, "point", handleRect(cx, cy), m.selected);
    }
  } else if (ct === "parallel_coordinates") {
    const n = view.axes.length;
    for (let i = 0; i < n; i++) {
      const axis = view.axes[i];
      const [lo, hi] = axis.domain as number[];
      const px = n === 1 ? PLOT.x0 : PLOT.x0 + (i * (PLOT.x1 - PLOT.x0)) / (n - 1);
      const scale = axis.descending
        ? linear(lo, hi, PLOT.yTop, PLOT.yBottom)
        : linear(lo, hi, PLOT.yBottom, PLOT.yTop);
      scene.pcpAxes.push({ index: i, attribute: axis.attribute as string, px, scale });
    }
    for (const m of view.marks) {
      const pts: [number, number][] = [];
      for (const a of scene.pcpAxes) {
        const v = m.channels.values[a.attribute];
        pts.push([a.px, apply(a.scale, v)]);
      }
      push(m.id, "polyline", handleRect(pts[0][0], pts[0][1]), m.selected, pts);
    }
  }
  return scene;
}
