import type { Point2 } from "./types.js";

/** Ray-casting point-in-polygon test; boundary points count as inside. */
export function pointInPolygon(pt: Point2, polygon: Point2[]): boolean {
  if (polygon.length < 3) return false;
  const [x, y] = pt;
  let inside = false;
  for (let i = 0, j = polygon.length - 1; i < polygon.length; j = i++) {
    const [xi, yi] = polygon[i];
    const [xj, yj] = polygon[j];
    if (onSegment([x, y], [xi, yi], [xj, yj])) return true;
    const crosses = yi > y !== yj > y && x < ((xj - xi) * (y - yi)) / (yj - yi) + xi;
    if (crosses) inside = !inside;
  }
  return inside;
}

function onSegment(p: Point2, a: Point2, b: Point2): boolean {
  const cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
  if (Math.abs(cross) > 1e-12) return false;
  const dot = (p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1]);
  const len2 = (b[0] - a[0]) ** 2 + (b[1] - a[1]) ** 2;
  return dot >= 0 && dot <= len2;
}

export interface Bounds {
  xMin: number;
  xMax: number;
  yMin: number;
  yMax: number;
}

export function dataBounds(xs: number[], ys: number[]): Bounds {
  let xMin = Infinity, xMax = -Infinity, yMin = Infinity, yMax = -Infinity;
  for (const x of xs) {
    if (x < xMin) xMin = x;
    if (x > xMax) xMax = x;
  }
  for (const y of ys) {
    if (y < yMin) yMin = y;
    if (y > yMax) yMax = y;
  }
  if (!isFinite(xMin)) return { xMin: 0, xMax: 1, yMin: 0, yMax: 1 };
  const padX = (xMax - xMin || 1) * 0.05;
  const padY = (yMax - yMin || 1) * 0.05;
  return { xMin: xMin - padX, xMax: xMax + padX, yMin: yMin - padY, yMax: yMax + padY };
}

/** Affine map from data coordinates to canvas pixels (y flipped). */
export function makeTransform(bounds: Bounds, width: number, height: number) {
  const sx = width / (bounds.xMax - bounds.xMin);
  const sy = height / (bounds.yMax - bounds.yMin);
  return {
    toScreen(p: Point2): Point2 {
      return [(p[0] - bounds.xMin) * sx, height - (p[1] - bounds.yMin) * sy];
    },
    toData(p: Point2): Point2 {
      return [p[0] / sx + bounds.xMin, (height - p[1]) / sy + bounds.yMin];
    },
  };
}
