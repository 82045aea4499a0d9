export interface DatasetHandle {
  id: string;
  n: number;
  d: number;
  created_at: string;
  latest_run: string | null;
}

export interface PointRow {
  id: number;
  features: number[];
  /** -1 means anomaly / unassigned. */
  label: number;
  /** Expectation under the relevant model; null before the first run. */
  score: number | null;
  truth?: number;
}

export interface PointsPage {
  total: number;
  offset: number;
  limit: number;
  columns: string[];
  points: PointRow[];
}

export interface SeedEntry {
  point_id: number;
  cluster_id: number;
}

export interface ClusterModel {
  median: number[];
  n: number;
  mu: number;
  support: number;
  gap_star: number;
  edge: number;
  cutoff: number;
}

export interface RunReport {
  passes: number;
  converged: "yes" | "no" | "cycle";
  ejected_total: number;
  absorbed_total: number;
  per_cluster: Record<string, { size: number; mu: number; cutoff: number }>;
  emptied: number[];
}

export interface RunSnapshot {
  run_id: string;
  dataset_id: string;
  status: "running" | "done" | "failed";
  error?: string;
  labels?: number[];
  scores?: number[];
  models?: Record<string, ClusterModel>;
  report?: RunReport;
  seeds?: SeedEntry[];
}

export type Point2 = [number, number];
