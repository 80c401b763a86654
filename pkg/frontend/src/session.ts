// Editor session state: debounced checking with at most one request in
// flight, stale-response discard by buffer version, and a staleness flag
// that clears only when a response matches the current buffer.

import { CheckBackend } from "./backend";
import { CheckResponse } from "./core/check";

export interface SessionEvents {
  onResponse(resp: CheckResponse, checkedText: string): void;
  onError(err: unknown): void;
  onStaleness(stale: boolean): void;
}

type Timer = ReturnType<typeof setTimeout>;

export class EditorSession {
  buffer = "";
  lastResponse: CheckResponse | null = null;
  checkInFlight = false;

  private version = 0;
  private timer: Timer | null = null;
  private rerunWanted = false;

  constructor(
    private backend: CheckBackend,
    private events: SessionEvents,
    private debounceMs = 300,
  ) {}

  setBackend(backend: CheckBackend): void {
    this.backend = backend;
  }

  onEdit(text: string): void {
    this.buffer = text;
    this.version += 1;
    this.events.onStaleness(true);
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.flush();
    }, this.debounceMs);
  }

  /** Re-check the current buffer immediately (retry button, backend switch). */
  checkNow(): void {
    this.version += 1;
    this.events.onStaleness(true);
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    void this.flush();
  }

  private async flush(): Promise<void> {
    if (this.checkInFlight) {
      this.rerunWanted = true;
      return;
    }
    const version = this.version;
    const text = this.buffer;
    this.checkInFlight = true;
    try {
      const resp = await this.backend.check(text, "prefix");
      if (version === this.version) {
        this.lastResponse = resp;
        this.events.onResponse(resp, text);
        this.events.onStaleness(false);
      } else {
        this.rerunWanted = true; // response was stale: check the newer buffer
      }
    } catch (err) {
      this.events.onError(err);
    } finally {
      this.checkInFlight = false;
      if (this.rerunWanted) {
        this.rerunWanted = false;
        void this.flush();
      }
    }
  }
}
