/** Map a pixel position to exactly one instrument zone, plus the
 * data-space coordinate when the position lies on a scale or the canvas. */

import {
  CANVAS,
  INK_PAD,
  LEGEND_TITLE,
  MODIFIER,
  PANEL,
  X_SCALE,
  X_TITLE,
  Y_SCALE,
  Y_TITLE,
  contains,
  legendItemRect,
  pillRect,
} from "./layout";
import { invert } from "./scales";
import { Scene } from "./scene";
import { Zone } from "./types";

export interface HitResult {
  zone: Zone;
  data: number | number[] | null;
}

const zone = (kind: Zone["kind"], name: string | null = null,
              index: number | null = null): Zone => ({ kind, name, index });

const PCP_AXIS_SLOP = 10;

export function hitTest(scene: Scene, x: number, y: number): HitResult {
  if (contains(MODIFIER, x, y)) return { zone: zone("modifier"), data: null };
  if (contains(INK_PAD, x, y)) return { zone: zone("panel", "ink_pad"), data: null };
  if (contains(PANEL, x, y)) {
    for (let i = 0; i < scene.pills.length; i++) {
      if (contains(pillRect(i), x, y)) {
        return { zone: zone("pill", scene.pills[i]), data: null };
      }
    }
    return { zone: zone("panel"), data: null };
  }
  if (contains(LEGEND_TITLE, x, y)) {
    return { zone: zone("legend_title", scene.legendTitle), data: null };
  }
  for (let i = 0; i < scene.legendItems.length; i++) {
    if (contains(legendItemRect(i), x, y)) {
      return { zone: zone("legend_item", scene.legendItems[i]), data: null };
    }
  }
  if (contains(CANVAS, x, y)) {
    // topmost mark wins; axes and canvas sit underneath
    for (let i = scene.shapes.length - 1; i >= 0; i--) {
      if (contains(scene.shapes[i].bounds, x, y)) {
        return { zone: zone("mark", scene.shapes[i].markId), data: null };
      }
    }
    for (const axis of scene.pcpAxes) {
      if (Math.abs(x - axis.px) <= PCP_AXIS_SLOP) {
        return {
          zone: zone("y_scale", axis.attribute, axis.index),
          data: invert(axis.scale, y),
        };
      }
    }
    let data: number[] | null = null;
    if (scene.xScale && scene.yScale) {
      data = [invert(scene.xScale, x), invert(scene.yScale, y)];
    }
    return { zone: zone("canvas"), data };
  }
  if (contains(Y_SCALE, x, y)) {
    return {
      zone: zone("y_scale"),
      data: scene.yScale ? invert(scene.yScale, y) : null,
    };
  }
  if (contains(X_SCALE, x, y)) {
    return {
      zone: zone("x_scale"),
      data: scene.xScale ? invert(scene.xScale, x) : null,
    };
  }
  if (contains(Y_TITLE, x, y)) {
    // with several Y attributes the title band splits into equal segments
    const n = scene.yTitles.length;
    if (n > 1) {
      const i = Math.min(Math.floor(((y - Y_TITLE.y) * n) / Y_TITLE.h), n - 1);
      return { zone: zone("y_title", scene.yTitles[i]), data: null };
    }
    return { zone: zone("y_title", scene.yTitles[0] ?? null), data: null };
  }
  if (contains(X_TITLE, x, y)) {
    return { zone: zone("x_title", scene.xTitle), data: null };
  }
  return { zone: zone("panel"), data: null };
}
