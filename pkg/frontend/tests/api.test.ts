import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { fetchScene, FetchFn, SceneRequestScheduler } from "../src/api";
import { defaultParams } from "../src/state";

const goldenText = readFileSync(
  new URL("./fixtures/golden_scene.json", import.meta.url),
  "utf8",
);

describe("fetchScene", () => {
  it("returns a validated scene on 200", async () => {
    const fetchFn: FetchFn = async () => ({ status: 200, body: goldenText });
    const result = await fetchScene("", defaultParams(), fetchFn);
    expect(result.ok).toBe(true);
    if (result.ok) expect(result.scene.computed.b_actual).toBeCloseTo(3.085676, 6);
  });

  it("surfaces the service's parameter message on 422", async () => {
    const fetchFn: FetchFn = async () => ({
      status: 422,
      body: JSON.stringify({ error: "sigma: must be in (0, 1]" }),
    });
    const result = await fetchScene("", defaultParams(), fetchFn);
    expect(result).toMatchObject({ ok: false, kind: "validation" });
    if (!result.ok) expect(result.message).toContain("sigma");
  });

  it("classifies thrown fetches as network failures", async () => {
    const fetchFn: FetchFn = async () => {
      throw new Error("connection refused");
    };
    const result = await fetchScene("", defaultParams(), fetchFn);
    expect(result).toMatchObject({ ok: false, kind: "network" });
  });

  it("rejects payloads that fail schema validation", async () => {
    const fetchFn: FetchFn = async () => ({ status: 200, body: '{"meta": {}}' });
    const result = await fetchScene("", defaultParams(), fetchFn);
    expect(result).toMatchObject({ ok: false, kind: "schema" });
  });
});

describe("latest-wins scheduler", () => {
  it("keeps at most one request in flight and the last value wins", async () => {
    const seen: number[] = [];
    let inFlight = 0;
    let maxInFlight = 0;
    let release: (() => void) | null = null;

    const scheduler = new SceneRequestScheduler(
      async (params) => {
        inFlight++;
        maxInFlight = Math.max(maxInFlight, inFlight);
        seen.push(params.sigma);
        await new Promise<void>((resolve) => (release = resolve));
        inFlight--;
      },
      { minIntervalMs: 0 },
    );

    for (const sigma of [0.99, 0.98, 0.97, 0.96]) {
      scheduler.request({ sigma });
    }
    expect(seen).toEqual([0.99]); // first started, rest coalesced
    release!();
    await Promise.resolve();
    await Promise.resolve();
    release!();
    await Promise.resolve();
    expect(maxInFlight).toBe(1);
    expect(seen).toEqual([0.99, 0.96]); // intermediate values dropped
  });

  it("spaces request starts by the debounce interval", async () => {
    let clock = 0;
    const timers: Array<{ at: number; fn: () => void }> = [];
    const starts: number[] = [];
    const scheduler = new SceneRequestScheduler(
      async () => {
        starts.push(clock);
      },
      {
        minIntervalMs: 100,
        now: () => clock,
        setTimer: (fn, ms) => timers.push({ at: clock + ms, fn }),
      },
    );

    scheduler.request({ sigma: 0.99 });
    await Promise.resolve();
    scheduler.request({ sigma: 0.98 });
    await Promise.resolve();
    expect(starts).toEqual([0]); // second start deferred

    clock = 100;
    timers.shift()!.fn();
    await Promise.resolve();
    expect(starts).toEqual([0, 100]); // >= 100 ms apart: <= 10 req/s
  });
});
