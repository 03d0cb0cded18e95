// Editor state and the edit -> debounced re-fit loop.  Deliberately free of
// DOM and canvas so the request/render behavior is unit-testable against a
// mock transport.

import { FitClient, Transport } from "./client.js";
import { Debouncer } from "./debounce.js";
import type { FitReport, FitRequest, FitResponse } from "./protocol.js";

export interface ViewTransform {
  scale: number;
  tx: number;
  ty: number;
}

export interface EditorState {
  points: [number, number][];
  clampEnabled: boolean;
  clampDeg: [number, number];
  report: FitReport | null;
  polylines: [number, number][][];
  banner: string | null;
  fitting: boolean;
  view: ViewTransform;
}

export interface NodeBadge {
  nodeIndex: number;
  certified: boolean;
  g2: boolean;
}

export const DEBOUNCE_MS = 75;

export class EditorController {
  readonly state: EditorState;
  private readonly client: FitClient;
  private readonly debouncer: Debouncer;

  constructor(
    transport: Transport,
    private readonly render: (state: EditorState) => void,
    debounceMs: number = DEBOUNCE_MS,
  ) {
    this.state = {
      points: [],
      clampEnabled: false,
      clampDeg: [0, 0],
      report: null,
      polylines: [],
      banner: null,
      fitting: false,
      view: { scale: 80, tx: 60, ty: 300 },
    };
    this.debouncer = new Debouncer(debounceMs);
    this.client = new FitClient(
      transport,
      (response) => this.applyResult(response),
      (message) => this.applyError(message),
    );
  }

  get inFlightCount(): number {
    return this.client.inFlightCount;
  }

  /** Apply a state mutation, repaint immediately, and schedule a re-fit. */
  edit(mutate: (state: EditorState) => void): void {
    mutate(this.state);
    this.render(this.state);
    if (this.state.points.length >= 2) {
      this.state.fitting = true;
      this.debouncer.schedule(() => this.client.request(this.buildRequest()));
    }
  }

  /** View-only changes repaint without talking to the solver. */
  adjustView(mutate: (view: ViewTransform) => void): void {
    mutate(this.state.view);
    this.render(this.state);
  }

  badges(): NodeBadge[] {
    const report = this.state.report;
    if (report === null) return [];
    return report.per_node.map((node) => ({
      nodeIndex: node.node_index,
      certified: node.certified_by_psi,
      g2: node.g2_within_tol,
    }));
  }

  buildRequest(): FitRequest {
    const req: FitRequest = {
      op: "fit",
      points: this.state.points.map(([x, y]) => [x, y] as [number, number]),
    };
    if (this.state.clampEnabled) {
      req.endpoint_mode = {
        theta_first: this.state.clampDeg[0],
        theta_last: this.state.clampDeg[1],
      };
    }
    return req;
  }

  exportDocument(): string {
    const doc: Record<string, unknown> = {
      points: this.state.points,
    };
    if (this.state.clampEnabled) {
      doc.endpoint_mode = {
        theta_first: this.state.clampDeg[0],
        theta_last: this.state.clampDeg[1],
      };
    }
    return JSON.stringify(doc, null, 2);
  }

  importDocument(text: string): void {
    const doc = JSON.parse(text) as {
      points?: [number, number][];
      endpoint_mode?: { theta_first: number; theta_last: number };
    };
    if (!Array.isArray(doc.points) || doc.points.length < 2) {
      throw new Error("document needs a points array with at least 2 points");
    }
    this.edit((state) => {
      state.points = doc.points!.map(([x, y]) => [Number(x), Number(y)]);
      if (doc.endpoint_mode) {
        state.clampEnabled = true;
        state.clampDeg = [doc.endpoint_mode.theta_first, doc.endpoint_mode.theta_last];
      } else {
        state.clampEnabled = false;
      }
    });
  }

  private applyResult(response: FitResponse): void {
    this.state.report = response.report;
    this.state.polylines = response.polylines;
    this.state.banner = null;
    this.state.fitting = this.client.inFlightCount > 0;
    this.render(this.state);
  }

  private applyError(message: string): void {
    this.state.banner = message;
    this.state.fitting = this.client.inFlightCount > 0;
    this.render(this.state);
  }
}
