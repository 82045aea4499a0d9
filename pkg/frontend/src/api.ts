import type { DatasetHandle, PointsPage, RunSnapshot, SeedEntry } from "./types.js";

export class ServiceError extends Error {
  constructor(public status: number, public detail: string) {
    super(`HTTP ${status}: ${detail}`);
  }
}

async function parseError(resp: Response): Promise<never> {
  let detail = resp.statusText;
  try {
    const body = await resp.json();
    if (body && body.detail) detail = JSON.stringify(body.detail);
  } catch {
    /* non-JSON error body */
  }
  throw new ServiceError(resp.status, detail);
}

/** Thin typed client over the clustering service endpoints. */
export class ServiceClient {
  constructor(private baseUrl: string = "") {}

  private url(path: string): string {
    return `${this.baseUrl}${path}`;
  }

  async uploadDataset(csv: string): Promise<DatasetHandle> {
    const resp = await fetch(this.url("/api/datasets"), {
      method: "POST",
      headers: { "content-type": "text/csv" },
      body: csv,
    });
    if (!resp.ok) return parseError(resp);
    return resp.json();
  }

  async getPoints(datasetId: string, offset: number, limit: number): Promise<PointsPage> {
    const resp = await fetch(
      this.url(`/api/datasets/${datasetId}/points?offset=${offset}&limit=${limit}`),
    );
    if (!resp.ok) return parseError(resp);
    return resp.json();
  }

  async putSeeds(datasetId: string, entries: SeedEntry[]): Promise<number> {
    const resp = await fetch(this.url(`/api/datasets/${datasetId}/seeds`), {
      method: "PUT",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(entries),
    });
    if (!resp.ok) return parseError(resp);
    return (await resp.json()).accepted;
  }

  async startRun(datasetId: string, maxIter?: number): Promise<string> {
    const resp = await fetch(this.url(`/api/datasets/${datasetId}/runs`), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(maxIter === undefined ? {} : { max_iter: maxIter }),
    });
    if (!resp.ok) return parseError(resp);
    return (await resp.json()).run_id;
  }

  async getRun(runId: string): Promise<RunSnapshot> {
    const resp = await fetch(this.url(`/api/runs/${runId}`));
    if (!resp.ok) return parseError(resp);
    return resp.json();
  }

  async predict(runId: string, points: number[][]): Promise<{ labels: number[]; scores: number[] }> {
    const resp = await fetch(this.url(`/api/runs/${runId}/predict`), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ points }),
    });
    if (!resp.ok) return parseError(resp);
    return resp.json();
  }
}
