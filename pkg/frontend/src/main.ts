import { ServiceClient } from "./api.js";
import { Session } from "./controller.js";
import { drawScatter, renderAnomalyPanel, ScatterView } from "./render.js";
import type { ColorMode } from "./state.js";
import type { Point2 } from "./types.js";

const client = new ServiceClient("");
const session = new Session(client);

const canvas = document.getElementById("scatter") as HTMLCanvasElement;
const fileInput = document.getElementById("file") as HTMLInputElement;
const xSelect = document.getElementById("x-column") as HTMLSelectElement;
const ySelect = document.getElementById("y-column") as HTMLSelectElement;
const modeSelect = document.getElementById("color-mode") as HTMLSelectElement;
const clusterInput = document.getElementById("cluster-id") as HTMLInputElement;
const assignButton = document.getElementById("assign") as HTMLButtonElement;
const runButton = document.getElementById("commit-run") as HTMLButtonElement;
const sortButton = document.getElementById("panel-sort") as HTMLButtonElement;
const panel = document.getElementById("anomaly-panel") as HTMLElement;
const status = document.getElementById("status") as HTMLElement;

let view: ScatterView | null = null;
let lassoScreen: Point2[] | null = null;
let panelDirection: "asc" | "desc" = "desc";

function say(text: string) {
  status.textContent = text;
}

function redraw() {
  view = drawScatter(canvas, session, lassoScreen);
  renderAnomalyPanel(panel, session, panelDirection, 400, (id) => {
    session.focusPoint(id);
    redraw();
  });
}

function fillColumnSelects() {
  for (const select of [xSelect, ySelect]) {
    select.replaceChildren();
    session.view.columns.forEach((name, i) => {
      const opt = document.createElement("option");
      opt.value = String(i);
      opt.textContent = name;
      select.appendChild(opt);
    });
  }
  xSelect.value = String(session.view.xColumn);
  ySelect.value = String(session.view.yColumn);
}

const LAST_DATASET_KEY = "seedclust.dataset";

fileInput.addEventListener("change", async () => {
  const file = fileInput.files?.[0];
  if (!file) return;
  try {
    say(`uploading ${file.name}...`);
    await session.uploadCsv(await file.text());
    localStorage.setItem(LAST_DATASET_KEY, session.view.handle!.id);
    fillColumnSelects();
    say(`dataset ${session.view.handle!.id}: ${session.points.length} points`);
    redraw();
  } catch (err) {
    say(`upload failed: ${err} (fix the file and retry)`);
  }
});

async function resumeLastDataset() {
  const last = localStorage.getItem(LAST_DATASET_KEY);
  if (!last) return;
  try {
    await session.resumeDataset(last);
    fillColumnSelects();
    say(`resumed dataset ${last}: ${session.points.length} points`);
    redraw();
  } catch {
    localStorage.removeItem(LAST_DATASET_KEY); // dataset gone; start fresh
  }
}

xSelect.addEventListener("change", () => {
  session.view.xColumn = Number(xSelect.value);
  redraw();
});
ySelect.addEventListener("change", () => {
  session.view.yColumn = Number(ySelect.value);
  redraw();
});
modeSelect.addEventListener("change", () => {
  session.view.colorMode = modeSelect.value as ColorMode;
  redraw();
});

assignButton.addEventListener("click", () => {
  const cid = Number(clusterInput.value);
  try {
    const n = session.assignSeedLabel(cid);
    say(`staged ${n} seed(s) for cluster ${cid}; commit to apply`);
    session.view.selection = new Set();
    redraw();
  } catch (err) {
    say(String(err));
  }
});

runButton.addEventListener("click", async () => {
  runButton.disabled = true;
  try {
    say("committing seeds and running...");
    const snapshot = await session.commitAndRun(500);
    const report = snapshot.report!;
    say(
      `run ${snapshot.run_id}: converged=${report.converged} ` +
        `passes=${report.passes} ejected=${report.ejected_total} absorbed=${report.absorbed_total}`,
    );
    redraw();
  } catch (err) {
    say(`run failed: ${err} (adjust seeds and retry)`);
  } finally {
    runButton.disabled = false;
  }
});

sortButton.addEventListener("click", () => {
  panelDirection = panelDirection === "desc" ? "asc" : "desc";
  sortButton.textContent = `sort: ${panelDirection}`;
  redraw();
});

// lasso: drag to draw, release to select
canvas.addEventListener("pointerdown", (ev) => {
  lassoScreen = [[ev.offsetX, ev.offsetY]];
});
canvas.addEventListener("pointermove", (ev) => {
  if (!lassoScreen) return;
  lassoScreen.push([ev.offsetX, ev.offsetY]);
  redraw();
});
canvas.addEventListener("pointerup", () => {
  if (!lassoScreen || !view || lassoScreen.length < 3) {
    lassoScreen = null;
    redraw();
    return;
  }
  const polygon = lassoScreen.map((p) => view!.toData(p));
  const picked = session.lassoSelect(polygon);
  say(`selected ${picked.size} point(s)`);
  lassoScreen = null;
  redraw();
});

say("upload a CSV to begin");
void resumeLastDataset();
