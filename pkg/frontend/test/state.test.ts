import { describe, expect, it } from "vitest";

import {
  ANOMALY_COLOR,
  UNSCORED_COLOR,
  anomalyRows,
  assignSeedLabel,
  clusterColor,
  colorFor,
  createViewState,
  mergedSeedEntries,
  scoreColor,
  switchDataset,
} from "../src/state.js";
import type { DatasetHandle, PointRow } from "../src/types.js";

const handle: DatasetHandle = { id: "d1", n: 3, d: 2, created_at: "now", latest_run: null };

function point(id: number, label: number, score: number | null, truth?: number): PointRow {
  return { id, features: [id * 1.0, id * 2.0], label, score, truth };
}

describe("view state", () => {
  it("clears selection and edits on dataset switch", () => {
    const st = createViewState();
    st.selection = new Set([1, 2]);
    st.pendingEdits.set(1, 0);
    switchDataset(st, handle, ["x", "y"]);
    expect(st.selection.size).toBe(0);
    expect(st.pendingEdits.size).toBe(0);
    expect(st.columns).toEqual(["x", "y"]);
  });

  it("stages seed labels for the whole selection", () => {
    const st = createViewState();
    st.selection = new Set([3, 5, 8]);
    expect(assignSeedLabel(st, 2)).toBe(3);
    expect(st.pendingEdits.get(5)).toBe(2);
  });

  it("rejects negative cluster ids", () => {
    const st = createViewState();
    st.selection = new Set([1]);
    expect(() => assignSeedLabel(st, -1)).toThrow(/non-negative/);
  });

  it("merges pending edits over committed seeds", () => {
    const st = createViewState();
    st.committedSeeds = new Map([
      [1, 0],
      [2, 0],
    ]);
    st.pendingEdits = new Map([
      [2, 1],
      [9, 1],
    ]);
    expect(mergedSeedEntries(st)).toEqual([
      { point_id: 1, cluster_id: 0 },
      { point_id: 2, cluster_id: 1 },
      { point_id: 9, cluster_id: 1 },
    ]);
  });
});

describe("colors", () => {
  it("reserves a highlight color for anomalies in label mode", () => {
    const st = createViewState();
    st.colorMode = "labels";
    expect(colorFor(st, point(0, -1, 0.2))).toBe(ANOMALY_COLOR);
    expect(colorFor(st, point(1, 3, 5.0))).not.toBe(ANOMALY_COLOR);
  });

  it("uses truth labels in truth mode", () => {
    const st = createViewState();
    st.colorMode = "truth";
    expect(colorFor(st, point(0, 2, 1.0, -1))).toBe(ANOMALY_COLOR);
    expect(colorFor(st, point(0, 2, 1.0, 4))).toBe(clusterColor(4));
    expect(colorFor(st, point(0, 2, 1.0))).toBe(UNSCORED_COLOR);
  });

  it("keeps the score ramp monotone within each family", () => {
    const anomalous = [0.0, 0.3, 0.6, 0.99].map(scoreColor);
    expect(new Set(anomalous).size).toBe(anomalous.length);
    const members = [1, 5, 50, 500].map(scoreColor);
    expect(new Set(members).size).toBe(members.length);
    // E < 1 is visually distinct: red family vs blue family
    expect(scoreColor(0.5)).not.toBe(scoreColor(1.5));
    expect(scoreColor(null)).toBe(UNSCORED_COLOR);
  });
});

describe("anomaly panel", () => {
  const pts = [
    point(0, -1, 0.4),
    point(1, 2, 8.0),
    point(2, -1, 0.9),
    point(3, -1, null),
    point(4, 0, 3.0),
  ];

  it("lists only -1 points sorted by score descending", () => {
    const st = createViewState();
    const rows = anomalyRows(st, pts, "desc");
    expect(rows.map((r) => r.id)).toEqual([2, 0, 3]);
  });

  it("supports ascending order", () => {
    const st = createViewState();
    const rows = anomalyRows(st, pts, "asc");
    expect(rows.map((r) => r.id)).toEqual([3, 0, 2]);
  });

  it("projects the chosen columns", () => {
    const st = createViewState();
    st.xColumn = 1;
    st.yColumn = 0;
    const rows = anomalyRows(st, pts, "desc");
    expect(rows[0]).toMatchObject({ id: 2, x: 4, y: 2 });
  });
});
