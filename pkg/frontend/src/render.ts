import { Bounds, dataBounds, makeTransform } from "./geometry.js";
import { Session } from "./controller.js";
import { ANOMALY_COLOR, colorFor } from "./state.js";
import type { Point2 } from "./types.js";

export interface ScatterView {
  bounds: Bounds;
  toData(p: Point2): Point2;
}

/** Paint the scatter and return the screen/data transform used. */
export function drawScatter(
  canvas: HTMLCanvasElement,
  session: Session,
  lassoPath: Point2[] | null,
): ScatterView {
  const ctx = canvas.getContext("2d")!;
  const { width, height } = canvas;
  ctx.clearRect(0, 0, width, height);

  const { xColumn, yColumn } = session.view;
  const xs = session.points.map((p) => p.features[xColumn]);
  const ys = session.points.map((p) => p.features[yColumn]);
  const bounds = dataBounds(xs, ys);
  const tf = makeTransform(bounds, width, height);

  for (const p of session.points) {
    const [sx, sy] = tf.toScreen([p.features[xColumn], p.features[yColumn]]);
    ctx.fillStyle = colorFor(session.view, p);
    ctx.globalAlpha = p.label === -1 && session.view.colorMode !== "scores" ? 0.9 : 0.65;
    ctx.fillRect(sx - 1.5, sy - 1.5, 3, 3);
  }
  ctx.globalAlpha = 1;

  // selection and pending edits get a visible outline
  if (session.view.selection.size || session.view.pendingEdits.size) {
    const marked = new Set([...session.view.selection, ...session.view.pendingEdits.keys()]);
    ctx.strokeStyle = "#111";
    for (const p of session.points) {
      if (!marked.has(p.id)) continue;
      const [sx, sy] = tf.toScreen([p.features[xColumn], p.features[yColumn]]);
      ctx.strokeRect(sx - 3, sy - 3, 6, 6);
    }
  }

  const focused = session.view.focusedPoint;
  if (focused !== null) {
    const p = session.points.find((q) => q.id === focused);
    if (p) {
      const [sx, sy] = tf.toScreen([p.features[xColumn], p.features[yColumn]]);
      ctx.strokeStyle = ANOMALY_COLOR;
      ctx.lineWidth = 2;
      ctx.beginPath();
      ctx.arc(sx, sy, 9, 0, 2 * Math.PI);
      ctx.stroke();
      ctx.lineWidth = 1;
    }
  }

  if (lassoPath && lassoPath.length > 1) {
    ctx.strokeStyle = "#333";
    ctx.setLineDash([4, 3]);
    ctx.beginPath();
    ctx.moveTo(lassoPath[0][0], lassoPath[0][1]);
    for (const [x, y] of lassoPath.slice(1)) ctx.lineTo(x, y);
    ctx.closePath();
    ctx.stroke();
    ctx.setLineDash([]);
  }

  return { bounds, toData: tf.toData };
}

/** Rebuild the anomaly panel list; returns the number of rows shown. */
export function renderAnomalyPanel(
  container: HTMLElement,
  session: Session,
  direction: "asc" | "desc",
  limit: number,
  onFocus: (id: number) => void,
): number {
  const rows = session.anomalyPanel(direction);
  container.replaceChildren();
  const header = document.createElement("div");
  header.className = "panel-row panel-header";
  header.textContent = `${rows.length} anomalies (score ${direction})`;
  container.appendChild(header);
  for (const row of rows.slice(0, limit)) {
    const el = document.createElement("div");
    el.className = "panel-row";
    const score = row.score === null ? "-" : row.score.toPrecision(3);
    el.textContent = `#${row.id}  E=${score}  (${row.x.toPrecision(4)}, ${row.y.toPrecision(4)})`;
    el.addEventListener("click", () => onFocus(row.id));
    container.appendChild(el);
  }
  return rows.length;
}
