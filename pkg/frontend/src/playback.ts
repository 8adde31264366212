/**
 * Shrink-animation playback: steps sigma through a linear sequence at a
 * fixed interval, fetching each frame. Pause/resume keeps the frame
 * index; a failed fetch pauses with a message.
 */

export interface PlaybackOptions {
  intervalMs?: number;
  setTimer?: (fn: () => void, ms: number) => unknown;
  clearTimer?: (handle: unknown) => void;
}

export function sigmaSequence(from: number, to: number, frames: number): number[] {
  if (frames < 1) throw new Error("frames: must be >= 1");
  if (frames === 1) return [from];
  const values: number[] = [];
  const step = (to - from) / (frames - 1);
  for (let i = 0; i < frames; i++) values.push(from + i * step);
  values[frames - 1] = to;
  return values;
}

export type PlaybackState = "idle" | "playing" | "paused" | "done" | "error";

export class Playback {
  readonly sigmas: number[];
  private index = 0;
  private stateValue: PlaybackState = "idle";
  private timer: unknown = null;
  errorMessage: string | null = null;

  private readonly intervalMs: number;
  private readonly setTimer: (fn: () => void, ms: number) => unknown;
  private readonly clearTimer: (handle: unknown) => void;

  constructor(
    from: number,
    to: number,
    frames: number,
    private readonly renderFrame: (sigma: number, index: number) => Promise<void>,
    options: PlaybackOptions = {},
  ) {
    this.sigmas = sigmaSequence(from, to, frames);
    this.intervalMs = options.intervalMs ?? 100;
    this.setTimer = options.setTimer ?? ((fn, ms) => setTimeout(fn, ms));
    this.clearTimer = options.clearTimer ?? ((h) => clearTimeout(h as number));
  }

  get state(): PlaybackState {
    return this.stateValue;
  }

  get frameIndex(): number {
    return this.index;
  }

  play(): void {
    if (this.stateValue === "playing" || this.stateValue === "done") return;
    this.stateValue = "playing";
    this.errorMessage = null;
    void this.step();
  }

  pause(): void {
    if (this.stateValue !== "playing") return;
    this.stateValue = "paused";
    if (this.timer !== null) {
      this.clearTimer(this.timer);
      this.timer = null;
    }
  }

  private async step(): Promise<void> {
    if (this.stateValue !== "playing") return;
    if (this.index >= this.sigmas.length) {
      this.stateValue = "done";
      return;
    }
    const i = this.index;
    try {
      await this.renderFrame(this.sigmas[i], i);
    } catch (err) {
      this.stateValue = "error";
      this.errorMessage = String(err);
      return;
    }
    if (this.stateValue !== "playing") return; // paused mid-frame
    this.index = i + 1;
    if (this.index >= this.sigmas.length) {
      this.stateValue = "done";
      return;
    }
    this.timer = this.setTimer(() => void this.step(), this.intervalMs);
  }
}
