import type { GuidanceResult } from './api.js';

export type FrameSource = () => string | null;
export type GuidanceFetch = (imageBase64: string) => Promise<GuidanceResult>;

export interface LoopOptions {
  intervalMs?: number;
  onUpdate: (result: GuidanceResult) => void;
  onError?: (err: unknown) => void;
}

/**
 * Polls the viewfinder and asks the service for guidance, aiming for one
 * update per second. Never lets requests pile up: if the previous request
 * is still in flight when the timer fires, that tick is skipped and the
 * next frame goes out as soon as the response lands.
 */
export class GuidanceLoop {
  private timer: ReturnType<typeof setInterval> | null = null;
  private inFlight = false;
  private pendingTick = false;
  updates = 0;
  lastResult: GuidanceResult | null = null;

  constructor(
    private readonly fetchGuidance: GuidanceFetch,
    private readonly nextFrame: FrameSource,
    private readonly opts: LoopOptions,
  ) {}

  get running(): boolean {
    return this.timer !== null;
  }

  start(): void {
    if (this.timer) return;
    const interval = this.opts.intervalMs ?? 1000;
    this.timer = setInterval(() => void this.tick(), interval);
    void this.tick(); // first update immediately, not after one interval
  }

  stop(): void {
    if (this.timer) {
      clearInterval(this.timer);
      this.timer = null;
    }
    this.pendingTick = false;
  }

  private async tick(): Promise<void> {
    if (this.inFlight) {
      this.pendingTick = true;
      return;
    }
    const frame = this.nextFrame();
    if (frame === null) return; // camera not ready yet

    this.inFlight = true;
    try {
      const result = await this.fetchGuidance(frame);
      this.updates += 1;
      this.lastResult = result;
      this.opts.onUpdate(result);
    } catch (err) {
      this.opts.onError?.(err);
    } finally {
      this.inFlight = false;
      if (this.pendingTick && this.timer) {
        this.pendingTick = false;
        void this.tick();
      }
    }
  }
}
