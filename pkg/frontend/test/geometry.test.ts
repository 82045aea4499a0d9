import { describe, expect, it } from "vitest";

import { dataBounds, makeTransform, pointInPolygon } from "../src/geometry.js";
import type { Point2 } from "../src/types.js";

const square: Point2[] = [
  [0, 0],
  [10, 0],
  [10, 10],
  [0, 10],
];

describe("pointInPolygon", () => {
  it("accepts interior points", () => {
    expect(pointInPolygon([5, 5], square)).toBe(true);
    expect(pointInPolygon([0.001, 9.999], square)).toBe(true);
  });

  it("rejects exterior points", () => {
    expect(pointInPolygon([11, 5], square)).toBe(false);
    expect(pointInPolygon([-0.1, 5], square)).toBe(false);
    expect(pointInPolygon([5, -3], square)).toBe(false);
  });

  it("counts the boundary as inside", () => {
    expect(pointInPolygon([10, 5], square)).toBe(true);
    expect(pointInPolygon([0, 0], square)).toBe(true);
  });

  it("handles concave polygons", () => {
    const lShape: Point2[] = [
      [0, 0],
      [10, 0],
      [10, 4],
      [4, 4],
      [4, 10],
      [0, 10],
    ];
    expect(pointInPolygon([2, 8], lShape)).toBe(true);
    expect(pointInPolygon([8, 8], lShape)).toBe(false);
  });

  it("needs at least three vertices", () => {
    expect(pointInPolygon([0, 0], [[0, 0], [1, 1]])).toBe(false);
  });
});

describe("transform", () => {
  it("round-trips screen and data coordinates", () => {
    const bounds = dataBounds([0, 10], [0, 20]);
    const tf = makeTransform(bounds, 800, 600);
    const original: Point2 = [3.7, 12.1];
    const [x, y] = tf.toData(tf.toScreen(original));
    expect(x).toBeCloseTo(original[0], 9);
    expect(y).toBeCloseTo(original[1], 9);
  });

  it("flips the y axis for screen space", () => {
    const bounds = { xMin: 0, xMax: 1, yMin: 0, yMax: 1 };
    const tf = makeTransform(bounds, 100, 100);
    const [, syLow] = tf.toScreen([0.5, 0]);
    const [, syHigh] = tf.toScreen([0.5, 1]);
    expect(syLow).toBeGreaterThan(syHigh);
  });
});
