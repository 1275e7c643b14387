/** Fixed screen regions. Pixel rectangles never overlap, so every point
 * resolves to exactly one instrument zone (marks sit inside the canvas
 * and take precedence there). */

export interface Rect {
  x: number;
  y: number;
  w: number;
  h: number;
}

export const WIDTH = 1024;
export const HEIGHT = 768;

export const MODIFIER: Rect = { x: 0, y: 0, w: 200, h: 60 };
export const COMMAND_ROW: Rect = { x: 200, y: 0, w: 824, h: 60 };
export const PANEL: Rect = { x: 0, y: 60, w: 200, h: 600 };
export const INK_PAD: Rect = { x: 0, y: 660, w: 200, h: 108 };
export const Y_TITLE: Rect = { x: 200, y: 60, w: 30, h: 520 };
export const Y_SCALE: Rect = { x: 230, y: 60, w: 30, h: 520 };
export const CANVAS: Rect = { x: 260, y: 60, w: 600, h: 520 };
export const LEGEND_TITLE: Rect = { x: 860, y: 60, w: 164, h: 30 };
export const LEGEND_AREA: Rect = { x: 860, y: 90, w: 164, h: 490 };
export const X_SCALE: Rect = { x: 260, y: 580, w: 600, h: 30 };
export const X_TITLE: Rect = { x: 260, y: 610, w: 600, h: 30 };
export const CHIP_ROW: Rect = { x: 260, y: 640, w: 764, h: 128 };

export const PILL_X = 10;
export const PILL_Y0 = 70;
export const PILL_W = 180;
export const PILL_H = 36;
export const PILL_STEP = 44;

export const LEGEND_ITEM_H = 24;
export const LEGEND_ITEM_STEP = 28;

export function contains(r: Rect, x: number, y: number): boolean {
  return x >= r.x && x < r.x + r.w && y >= r.y && y < r.y + r.h;
}

export function pillRect(index: number): Rect {
  return { x: PILL_X, y: PILL_Y0 + index * PILL_STEP, w: PILL_W, h: PILL_H };
}

export function legendItemRect(index: number): Rect {
  return {
    x: LEGEND_AREA.x + 4,
    y: LEGEND_AREA.y + index * LEGEND_ITEM_STEP,
    w: LEGEND_AREA.w - 8,
    h: LEGEND_ITEM_H,
  };
}
