// Browser wiring: canvas events, clamp controls, import/export.

import { EditorController, EditorState } from "./controller.js";
import type { FitRequest, FitResponse, ErrorResponse } from "./protocol.js";
import {
  POINT_RADIUS, clampHandleScreenPos, drawScene, screenToWorld, sidebarHtml,
  worldToScreen,
} from "./render.js";

const canvas = document.getElementById("editor") as HTMLCanvasElement;
const sidebar = document.getElementById("sidebar") as HTMLElement;
const clampToggle = document.getElementById("clamp-toggle") as HTMLInputElement;
const clampFirst = document.getElementById("clamp-first") as HTMLInputElement;
const clampLast = document.getElementById("clamp-last") as HTMLInputElement;
const exportButton = document.getElementById("export-btn") as HTMLButtonElement;
const importInput = document.getElementById("import-input") as HTMLInputElement;
const ctx = canvas.getContext("2d")!;

async function fetchTransport(request: FitRequest): Promise<FitResponse> {
  const resp = await fetch("/api", {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(request),
  });
  const body = (await resp.json()) as FitResponse | ErrorResponse;
  if ("error" in body) {
    throw new Error(`${body.error}: ${body.message}`);
  }
  return body;
}

function repaint(state: EditorState): void {
  drawScene(ctx, state);
  sidebar.innerHTML = sidebarHtml(state);
  clampToggle.checked = state.clampEnabled;
  clampFirst.disabled = clampLast.disabled = !state.clampEnabled;
  if (document.activeElement !== clampFirst) {
    clampFirst.value = state.clampDeg[0].toFixed(1);
  }
  if (document.activeElement !== clampLast) {
    clampLast.value = state.clampDeg[1].toFixed(1);
  }
}

const controller = new EditorController(fetchTransport, repaint);

controller.edit((state) => {
  state.points = [
    [0.0, 0.0], [1.0, 0.55], [2.3, 0.8], [3.4, 0.4], [4.2, -0.45], [5.5, -0.7],
  ];
});

function canvasPos(ev: MouseEvent): [number, number] {
  const rect = canvas.getBoundingClientRect();
  return [ev.clientX - rect.left, ev.clientY - rect.top];
}

function hitPoint(state: EditorState, sx: number, sy: number): number | null {
  for (let i = state.points.length - 1; i >= 0; i--) {
    const [px, py] = worldToScreen(state, state.points[i][0], state.points[i][1]);
    if (Math.hypot(px - sx, py - sy) <= POINT_RADIUS + 3) return i;
  }
  return null;
}

function hitClampHandle(state: EditorState, sx: number, sy: number): 0 | 1 | null {
  for (const which of [0, 1] as const) {
    const handle = clampHandleScreenPos(state, which);
    if (handle && Math.hypot(handle[0] - sx, handle[1] - sy) <= 8) return which;
  }
  return null;
}

type DragMode =
  | { kind: "point"; index: number }
  | { kind: "clamp"; which: 0 | 1 }
  | { kind: "pan"; startTx: number; startTy: number; startX: number; startY: number }
  | null;

let drag: DragMode = null;
let moved = false;

canvas.addEventListener("mousedown", (ev) => {
  const [sx, sy] = canvasPos(ev);
  moved = false;
  const clampHit = hitClampHandle(controller.state, sx, sy);
  if (clampHit !== null) {
    drag = { kind: "clamp", which: clampHit };
    return;
  }
  const idx = hitPoint(controller.state, sx, sy);
  if (idx !== null) {
    drag = { kind: "point", index: idx };
    return;
  }
  drag = {
    kind: "pan",
    startTx: controller.state.view.tx,
    startTy: controller.state.view.ty,
    startX: sx,
    startY: sy,
  };
});

canvas.addEventListener("mousemove", (ev) => {
  if (!drag) return;
  moved = true;
  const [sx, sy] = canvasPos(ev);
  if (drag.kind === "point") {
    const index = drag.index;
    const [wx, wy] = screenToWorld(controller.state, sx, sy);
    controller.edit((state) => {
      state.points[index] = [wx, wy];
    });
  } else if (drag.kind === "clamp") {
    const which = drag.which;
    const state = controller.state;
    const base = which === 0 ? state.points[0] : state.points[state.points.length - 1];
    const [bx, by] = worldToScreen(state, base[0], base[1]);
    const angle = (Math.atan2(by - sy, sx - bx) * 180) / Math.PI;
    controller.edit((s) => {
      s.clampDeg[which] = Math.round(angle * 10) / 10;
    });
  } else {
    const { startTx, startTy, startX, startY } = drag;
    controller.adjustView((view) => {
      view.tx = startTx + (sx - startX);
      view.ty = startTy + (sy - startY);
    });
  }
});

window.addEventListener("mouseup", (ev) => {
  if (drag && drag.kind === "pan" && !moved) {
    const [sx, sy] = canvasPos(ev as MouseEvent);
    const [wx, wy] = screenToWorld(controller.state, sx, sy);
    controller.edit((state) => {
      state.points.push([wx, wy]);
    });
  }
  drag = null;
});

canvas.addEventListener("dblclick", (ev) => {
  const [sx, sy] = canvasPos(ev);
  const idx = hitPoint(controller.state, sx, sy);
  if (idx !== null && controller.state.points.length > 2) {
    controller.edit((state) => {
      state.points.splice(idx, 1);
    });
  }
});

canvas.addEventListener("wheel", (ev) => {
  ev.preventDefault();
  const [sx, sy] = canvasPos(ev);
  const factor = ev.deltaY < 0 ? 1.15 : 1 / 1.15;
  controller.adjustView((view) => {
    view.tx = sx - factor * (sx - view.tx);
    view.ty = sy - factor * (sy - view.ty);
    view.scale *= factor;
  });
});

clampToggle.addEventListener("change", () => {
  controller.edit((state) => {
    state.clampEnabled = clampToggle.checked;
  });
});
for (const [input, which] of [[clampFirst, 0], [clampLast, 1]] as const) {
  input.addEventListener("change", () => {
    const value = Number(input.value);
    if (Number.isFinite(value)) {
      controller.edit((state) => {
        state.clampDeg[which] = value;
      });
    }
  });
}

exportButton.addEventListener("click", () => {
  const blob = new Blob([controller.exportDocument()], { type: "application/json" });
  const link = document.createElement("a");
  link.href = URL.createObjectURL(blob);
  link.download = "points.json";
  link.click();
  URL.revokeObjectURL(link.href);
});

importInput.addEventListener("change", async () => {
  const file = importInput.files?.[0];
  if (!file) return;
  try {
    controller.importDocument(await file.text());
  } catch (err) {
    controller.edit((state) => {
      state.banner = err instanceof Error ? err.message : String(err);
    });
  }
  importInput.value = "";
});
