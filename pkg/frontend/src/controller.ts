import { ServiceClient } from "./api.js";
import { pointInPolygon } from "./geometry.js";
import {
  ViewState,
  anomalyRows,
  assignSeedLabel,
  createViewState,
  mergedSeedEntries,
  switchDataset,
} from "./state.js";
import type { AnomalyRow } from "./state.js";
import type { Point2, PointRow, RunSnapshot } from "./types.js";

const MIN_POLL_MS = 500;

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

/**
 * Holds the client-side session: the view state, the point cache, and the
 * latest snapshot. All clustering decisions round-trip through the service;
 * nothing here relabels points locally.
 */
export class Session {
  readonly view: ViewState = createViewState();
  points: PointRow[] = [];
  snapshot: RunSnapshot | null = null;

  constructor(readonly client: ServiceClient) {}

  async uploadCsv(csv: string): Promise<void> {
    const handle = await this.client.uploadDataset(csv);
    const first = await this.client.getPoints(handle.id, 0, 1);
    switchDataset(this.view, handle, first.columns);
    this.snapshot = null;
    await this.refreshPoints();
  }

  /**
   * Re-attach to an already-uploaded dataset (page reload): point labels and
   * scores come back from the latest completed snapshot on the service, so
   * the rebuilt view matches what was on screen before.
   */
  async resumeDataset(datasetId: string): Promise<void> {
    const first = await this.client.getPoints(datasetId, 0, 1);
    switchDataset(
      this.view,
      {
        id: datasetId,
        n: first.total,
        d: first.columns.length,
        created_at: "",
        latest_run: null,
      },
      first.columns,
    );
    this.snapshot = null;
    await this.refreshPoints();
  }

  async refreshPoints(pageSize = 2000): Promise<void> {
    const handle = this.view.handle;
    if (!handle) throw new Error("no dataset loaded");
    const rows: PointRow[] = [];
    for (let offset = 0; offset < handle.n; offset += pageSize) {
      const page = await this.client.getPoints(handle.id, offset, pageSize);
      rows.push(...page.points);
    }
    this.points = rows;
  }

  /** Select every point whose (x, y) projection falls inside the polygon. */
  lassoSelect(polygon: Point2[]): Set<number> {
    const { xColumn, yColumn } = this.view;
    const picked = new Set<number>();
    for (const p of this.points) {
      const pt: Point2 = [p.features[xColumn], p.features[yColumn]];
      if (pointInPolygon(pt, polygon)) picked.add(p.id);
    }
    this.view.selection = picked;
    return picked;
  }

  /** Stage the current selection as seeds of the given cluster. */
  assignSeedLabel(clusterId: number): number {
    return assignSeedLabel(this.view, clusterId);
  }

  /**
   * Push the merged seed set, start a run, poll until it settles, and
   * refresh point labels/scores from the completed snapshot.
   */
  async commitAndRun(pollMs = MIN_POLL_MS, maxIter?: number): Promise<RunSnapshot> {
    const handle = this.view.handle;
    if (!handle) throw new Error("no dataset loaded");
    const entries = mergedSeedEntries(this.view);
    if (entries.length === 0) throw new Error("no seeds to commit");
    const interval = Math.max(pollMs, MIN_POLL_MS);

    await this.client.putSeeds(handle.id, entries);
    const runId = await this.client.startRun(handle.id, maxIter);
    let snapshot = await this.client.getRun(runId);
    while (snapshot.status === "running") {
      await sleep(interval);
      snapshot = await this.client.getRun(runId);
    }
    if (snapshot.status === "failed") {
      throw new Error(`run ${runId} failed: ${snapshot.error}`);
    }
    this.view.committedSeeds = new Map(entries.map((e) => [e.point_id, e.cluster_id]));
    this.view.pendingEdits = new Map();
    this.snapshot = snapshot;
    handle.latest_run = runId;
    await this.refreshPoints();
    return snapshot;
  }

  anomalyPanel(direction: "asc" | "desc" = "desc"): AnomalyRow[] {
    return anomalyRows(this.view, this.points, direction);
  }

  focusPoint(id: number): PointRow {
    const row = this.points.find((p) => p.id === id);
    if (!row) throw new Error(`unknown point ${id}`);
    this.view.focusedPoint = id;
    return row;
  }
}
