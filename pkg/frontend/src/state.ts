import type { DatasetHandle, PointRow } from "./types.js";

export type ColorMode = "truth" | "labels" | "scores";

/** Reserved highlight color for anomalies (-1) in every categorical mode. */
export const ANOMALY_COLOR = "#d62728";
export const UNSCORED_COLOR = "#b0b0b0";

const PALETTE = [
  "#1f77b4",
  "#2ca02c",
  "#9467bd",
  "#8c564b",
  "#e377c2",
  "#7f7f7f",
  "#bcbd22",
  "#17becf",
  "#ff7f0e",
  "#4e79a7",
];

export interface ViewState {
  handle: DatasetHandle | null;
  columns: string[];
  xColumn: number;
  yColumn: number;
  colorMode: ColorMode;
  selection: Set<number>;
  /** point id -> cluster id staged locally, not yet committed to the service */
  pendingEdits: Map<number, number>;
  /** seed set last accepted by the service */
  committedSeeds: Map<number, number>;
  focusedPoint: number | null;
}

export function createViewState(): ViewState {
  return {
    handle: null,
    columns: [],
    xColumn: 0,
    yColumn: 1,
    colorMode: "labels",
    selection: new Set(),
    pendingEdits: new Map(),
    committedSeeds: new Map(),
    focusedPoint: null,
  };
}

/** Selecting a new dataset invalidates selection and pending edits. */
export function switchDataset(state: ViewState, handle: DatasetHandle, columns: string[]): void {
  state.handle = handle;
  state.columns = columns;
  state.xColumn = 0;
  state.yColumn = columns.length > 1 ? 1 : 0;
  state.selection = new Set();
  state.pendingEdits = new Map();
  state.committedSeeds = new Map();
  state.focusedPoint = null;
}

/** Stage a seed label for every currently selected point. */
export function assignSeedLabel(state: ViewState, clusterId: number): number {
  if (!Number.isInteger(clusterId) || clusterId < 0) {
    throw new Error(`cluster id must be a non-negative integer, got ${clusterId}`);
  }
  for (const id of state.selection) {
    state.pendingEdits.set(id, clusterId);
  }
  return state.selection.size;
}

/** Committed seeds overlaid with pending edits, as the service expects them. */
export function mergedSeedEntries(state: ViewState): { point_id: number; cluster_id: number }[] {
  const merged = new Map(state.committedSeeds);
  for (const [id, cid] of state.pendingEdits) merged.set(id, cid);
  return [...merged.entries()]
    .sort((a, b) => a[0] - b[0])
    .map(([point_id, cluster_id]) => ({ point_id, cluster_id }));
}

export function clusterColor(clusterId: number): string {
  if (clusterId < 0) return ANOMALY_COLOR;
  return PALETTE[clusterId % PALETTE.length];
}

/**
 * Monotone ramp over expectation scores. Values below 1 (anomalous) use a
 * red family, members a blue family; within each family lightness decreases
 * as the score grows.
 */
export function scoreColor(score: number | null): string {
  if (score === null) return UNSCORED_COLOR;
  if (score < 1) {
    const t = Math.max(0, Math.min(1, score)); // 0 .. 1
    return mix("#7f1d1d", "#fca5a5", t);
  }
  const t = Math.min(1, Math.log10(1 + score) / 3); // 1 .. ~1000+
  return mix("#bfdbfe", "#1e3a8a", t);
}

function mix(a: string, b: string, t: number): string {
  const pa = hex(a), pb = hex(b);
  const c = pa.map((v, i) => Math.round(v + (pb[i] - v) * t));
  return `#${c.map((v) => v.toString(16).padStart(2, "0")).join("")}`;
}

function hex(color: string): number[] {
  return [1, 3, 5].map((i) => parseInt(color.slice(i, i + 2), 16));
}

export function colorFor(state: ViewState, point: PointRow): string {
  switch (state.colorMode) {
    case "truth":
      return point.truth === undefined ? UNSCORED_COLOR : clusterColor(point.truth);
    case "labels":
      return clusterColor(point.label);
    case "scores":
      return scoreColor(point.score);
  }
}

export interface AnomalyRow {
  id: number;
  score: number | null;
  x: number;
  y: number;
}

/** Rows for the anomaly panel: all -1 points, sortable by score. */
export function anomalyRows(
  state: ViewState,
  points: PointRow[],
  direction: "asc" | "desc" = "desc",
): AnomalyRow[] {
  const rows = points
    .filter((p) => p.label === -1)
    .map((p) => ({
      id: p.id,
      score: p.score,
      x: p.features[state.xColumn],
      y: p.features[state.yColumn],
    }));
  const sign = direction === "desc" ? -1 : 1;
  rows.sort((a, b) => sign * ((a.score ?? -Infinity) - (b.score ?? -Infinity)) || a.id - b.id);
  return rows;
}
