/**
 * Debounce an async request trigger and cancel superseded in-flight calls.
 *
 * Slider drags fire continuously; only the latest position should reach the
 * service, and a response from an older request must never overwrite a newer
 * one. Each accepted run gets a fresh AbortSignal (the previous in-flight
 * request is aborted) and a monotonically increasing sequence token that the
 * caller uses for latest-response-wins checks.
 */

export interface DebouncedRun {
  seq: number;
  signal: AbortSignal;
}

export class DebouncedRequester {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private controller: AbortController | null = null;
  private seq = 0;

  constructor(private readonly delayMs: number = 250) {}

  /** Schedule `run`; earlier pending schedules and in-flight requests die. */
  schedule(run: (ticket: DebouncedRun) => void): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      this.controller?.abort();
      this.controller = new AbortController();
      this.seq += 1;
      run({ seq: this.seq, signal: this.controller.signal });
    }, this.delayMs);
  }

  /** Sequence number of the most recently started run. */
  get latestSeq(): number {
    return this.seq;
  }

  cancel(): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = null;
    this.controller?.abort();
    this.controller = null;
  }
}
