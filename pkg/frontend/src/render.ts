// Canvas and sidebar painting.  Pure presentation: positions come from the
// editor's view transform, every curve sample and diagnostic number comes
// from the server's FitReport.

import type { EditorState } from "./controller.js";

export const POINT_RADIUS = 6;
export const CLAMP_HANDLE_LENGTH = 46;

export function worldToScreen(state: EditorState, x: number, y: number): [number, number] {
  const { scale, tx, ty } = state.view;
  return [tx + scale * x, ty - scale * y];
}

export function screenToWorld(state: EditorState, sx: number, sy: number): [number, number] {
  const { scale, tx, ty } = state.view;
  return [(sx - tx) / scale, (ty - sy) / scale];
}

function badgeColor(certified: boolean, g2: boolean): string {
  if (certified && g2) return "#2e8b57";
  if (g2) return "#b8860b";
  return "#c0392b";
}

export function clampHandleScreenPos(state: EditorState, which: 0 | 1): [number, number] | null {
  if (!state.clampEnabled || state.points.length < 2) return null;
  const base = which === 0 ? state.points[0] : state.points[state.points.length - 1];
  const angle = (state.clampDeg[which] * Math.PI) / 180;
  const [sx, sy] = worldToScreen(state, base[0], base[1]);
  return [sx + CLAMP_HANDLE_LENGTH * Math.cos(angle), sy - CLAMP_HANDLE_LENGTH * Math.sin(angle)];
}

export function drawScene(ctx: CanvasRenderingContext2D, state: EditorState): void {
  const canvas = ctx.canvas;
  ctx.clearRect(0, 0, canvas.width, canvas.height);

  // fitted curve
  ctx.lineWidth = 2;
  ctx.strokeStyle = "#1f4e9c";
  for (const poly of state.polylines) {
    ctx.beginPath();
    poly.forEach(([x, y], i) => {
      const [sx, sy] = worldToScreen(state, x, y);
      if (i === 0) ctx.moveTo(sx, sy);
      else ctx.lineTo(sx, sy);
    });
    ctx.stroke();
  }

  // control polygon
  ctx.lineWidth = 1;
  ctx.strokeStyle = "#c8c8c8";
  ctx.setLineDash([4, 4]);
  ctx.beginPath();
  state.points.forEach(([x, y], i) => {
    const [sx, sy] = worldToScreen(state, x, y);
    if (i === 0) ctx.moveTo(sx, sy);
    else ctx.lineTo(sx, sy);
  });
  ctx.stroke();
  ctx.setLineDash([]);

  // node badges from the report (interior nodes), plain handles elsewhere
  const badgeByIndex = new Map<number, string>();
  if (state.report) {
    for (const node of state.report.per_node) {
      badgeByIndex.set(node.node_index, badgeColor(node.certified_by_psi, node.g2_within_tol));
    }
  }
  state.points.forEach(([x, y], i) => {
    const [sx, sy] = worldToScreen(state, x, y);
    ctx.beginPath();
    ctx.arc(sx, sy, POINT_RADIUS, 0, 2 * Math.PI);
    ctx.fillStyle = badgeByIndex.get(i) ?? "#444444";
    ctx.fill();
    ctx.strokeStyle = "#ffffff";
    ctx.lineWidth = 1.5;
    ctx.stroke();
  });

  // clamp direction handles
  for (const which of [0, 1] as const) {
    const handle = clampHandleScreenPos(state, which);
    if (!handle) continue;
    const base = which === 0 ? state.points[0] : state.points[state.points.length - 1];
    const [bx, by] = worldToScreen(state, base[0], base[1]);
    ctx.strokeStyle = "#7a3fb3";
    ctx.lineWidth = 2;
    ctx.beginPath();
    ctx.moveTo(bx, by);
    ctx.lineTo(handle[0], handle[1]);
    ctx.stroke();
    ctx.beginPath();
    ctx.arc(handle[0], handle[1], 5, 0, 2 * Math.PI);
    ctx.fillStyle = "#7a3fb3";
    ctx.fill();
  }
}

function fmt(x: number, digits = 3): string {
  return x.toFixed(digits);
}

export function sidebarHtml(state: EditorState): string {
  const report = state.report;
  const rows: string[] = [];
  rows.push(`<p class="hint">click: add point &middot; drag: move &middot; double-click: delete &middot; wheel: zoom &middot; drag background: pan</p>`);
  if (state.banner) {
    rows.push(`<div class="banner">${state.banner}</div>`);
  }
  if (!report) {
    rows.push("<p>place at least two points to fit</p>");
    return rows.join("\n");
  }
  const psi = report.constants.psi_deg;
  rows.push(`<p>total energy <b>${report.total_energy.toExponential(4)}</b>`
    + ` &middot; sweeps ${report.sweeps}`
    + ` &middot; ${report.converged ? "converged" : "NOT CONVERGED"}`
    + `${state.fitting ? " &middot; fitting&hellip;" : ""}</p>`);
  rows.push(`<p>certification threshold &Psi; = ${fmt(psi, 2)}&deg;</p>`);
  rows.push("<table><tr><th>piece</th><th>&alpha;&deg;</th><th>&beta;&deg;</th><th>energy</th><th>kind</th></tr>");
  report.per_segment.forEach((seg, i) => {
    rows.push(`<tr><td>${i}</td><td>${fmt(seg.alpha_deg, 2)}</td>`
      + `<td>${fmt(seg.beta_deg, 2)}</td><td>${seg.energy.toExponential(3)}</td>`
      + `<td>${seg.kind.replace("_", " ")}</td></tr>`);
  });
  rows.push("</table>");
  if (report.per_node.length > 0) {
    rows.push("<table><tr><th>node</th><th>&psi;&deg;</th><th>|&psi;| &lt; &Psi;</th><th>G&sup2;</th><th>&kappa; jump</th></tr>");
    for (const node of report.per_node) {
      const cls = badgeColor(node.certified_by_psi, node.g2_within_tol);
      rows.push(`<tr><td>${node.node_index}</td><td>${fmt(node.psi_deg, 2)}</td>`
        + `<td>${node.certified_by_psi ? "yes" : "no"}</td>`
        + `<td style="color:${cls}"><b>${node.g2_within_tol ? "G2" : "jump"}</b></td>`
        + `<td>${node.kappa_jump.toExponential(2)}</td></tr>`);
    }
    rows.push("</table>");
  }
  return rows.join("\n");
}
