/**
 * Scene fetching with latest-wins scheduling: at most one request in
 * flight, at most one queued, and a minimum spacing between request
 * starts (debounce) so slider drags never flood the service.
 */
import { Scene, validateScene } from "./schema";
import { Params, toQuery } from "./state";

export type FetchResult =
  | { ok: true; scene: Scene }
  | { ok: false; kind: "validation" | "network" | "schema"; message: string };

export type FetchFn = (url: string) => Promise<{ status: number; body: string }>;

export async function fetchScene(
  baseUrl: string,
  params: Params,
  fetchFn: FetchFn,
): Promise<FetchResult> {
  const url = `${baseUrl}/scene?${toQuery(params).toString()}`;
  let status: number;
  let body: string;
  try {
    ({ status, body } = await fetchFn(url));
  } catch (err) {
    return { ok: false, kind: "network", message: String(err) };
  }
  if (status === 422) {
    let message = body;
    try {
      message = JSON.parse(body).error ?? body;
    } catch {
      /* keep raw body */
    }
    return { ok: false, kind: "validation", message };
  }
  if (status !== 200) {
    return { ok: false, kind: "network", message: `unexpected status ${status}` };
  }
  try {
    return { ok: true, scene: validateScene(JSON.parse(body)) };
  } catch (err) {
    return { ok: false, kind: "schema", message: String(err) };
  }
}

export interface SchedulerOptions {
  minIntervalMs?: number;
  now?: () => number;
  setTimer?: (fn: () => void, ms: number) => unknown;
}

/**
 * Latest-wins scheduler: call request() as often as you like; the handler
 * runs for the most recent parameters only, never concurrently, and at
 * most once per minIntervalMs.
 */
export class SceneRequestScheduler {
  private pending: Params | null = null;
  private inFlight = false;
  private lastStart = -Infinity;
  private readonly minIntervalMs: number;
  private readonly now: () => number;
  private readonly setTimer: (fn: () => void, ms: number) => unknown;
  private timerArmed = false;

  constructor(
    private readonly handler: (params: Params) => Promise<void>,
    options: SchedulerOptions = {},
  ) {
    this.minIntervalMs = options.minIntervalMs ?? 100;
    this.now = options.now ?? (() => Date.now());
    this.setTimer =
      options.setTimer ?? ((fn, ms) => setTimeout(fn, ms));
  }

  request(params: Params): void {
    this.pending = params;
    this.pump();
  }

  private pump(): void {
    if (this.inFlight || this.pending === null) return;
    const wait = this.lastStart + this.minIntervalMs - this.now();
    if (wait > 0) {
      if (!this.timerArmed) {
        this.timerArmed = true;
        this.setTimer(() => {
          this.timerArmed = false;
          this.pump();
        }, wait);
      }
      return;
    }
    const params = this.pending;
    this.pending = null;
    this.inFlight = true;
    this.lastStart = this.now();
    void this.handler(params).finally(() => {
      this.inFlight = false;
      this.pump();
    });
  }
}
