// Sequenced fit client: at most one request in flight, latest-wins queueing
// for edits made meanwhile, and stale responses discarded by sequence
// number so the rendered curve always matches the newest acknowledged
// request.

import type { FitRequest, FitResponse } from "./protocol.js";

export type Transport = (request: FitRequest) => Promise<FitResponse>;

export class FitClient {
  private seq = 0;
  private renderedSeq = 0;
  private inFlight = 0;
  private pending: FitRequest | null = null;

  constructor(
    private readonly transport: Transport,
    private readonly onResult: (response: FitResponse) => void,
    private readonly onError: (message: string) => void,
  ) {}

  get inFlightCount(): number {
    return this.inFlight;
  }

  request(req: FitRequest): void {
    if (this.inFlight > 0) {
      this.pending = req; // supersedes any earlier queued edit
      return;
    }
    void this.send(req);
  }

  private async send(req: FitRequest): Promise<void> {
    const seq = ++this.seq;
    this.inFlight += 1;
    try {
      const response = await this.transport(req);
      if (seq > this.renderedSeq) {
        this.renderedSeq = seq;
        this.onResult(response);
      }
    } catch (err) {
      this.onError(err instanceof Error ? err.message : String(err));
    } finally {
      this.inFlight -= 1;
      if (this.pending !== null) {
        const next = this.pending;
        this.pending = null;
        void this.send(next);
      }
    }
  }
}
