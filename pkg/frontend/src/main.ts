/**
 * Explorer entry point: sliders drive debounced /scene fetches; the view,
 * metrics panel and page URL always reflect the last fetched scene.
 */
import { fetchScene, FetchFn, SceneRequestScheduler } from "./api";
import { SLIDERS } from "./bounds";
import { metricsFromScene } from "./metrics";
import { YarnRenderer } from "./renderer";
import { Scene } from "./schema";
import { Playback } from "./playback";
import { defaultParams, fromQuery, Params, toQuery } from "./state";

const httpFetch: FetchFn = async (url) => {
  const response = await fetch(url);
  return { status: response.status, body: await response.text() };
};

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

export function startExplorer(baseUrl = ""): void {
  const params: Params = { ...defaultParams(), ...fromQuery(window.location.search) };
  const renderer = new YarnRenderer(el<HTMLCanvasElement>("view"));
  const metricsNode = el<HTMLTableElement>("metrics");
  const banner = el<HTMLDivElement>("banner");
  let lastScene: Scene | null = null;

  const showMetrics = (scene: Scene) => {
    metricsNode.innerHTML = "";
    for (const row of metricsFromScene(scene)) {
      const tr = metricsNode.insertRow();
      tr.insertCell().textContent = row.label;
      tr.insertCell().textContent = row.value;
    }
  };

  const scheduler = new SceneRequestScheduler(async (p) => {
    const result = await fetchScene(baseUrl, p, httpFetch);
    if (!result.ok) {
      banner.textContent =
        result.kind === "network" ? `service unreachable, retry: ${result.message}` : result.message;
      banner.className = `banner ${result.kind}`;
      return;
    }
    banner.textContent = "";
    banner.className = "banner";
    lastScene = result.scene;
    renderer.showScene(result.scene);
    showMetrics(result.scene);
    const query = toQuery(p).toString();
    window.history.replaceState(null, "", `?${query}`);
  });

  const slidersNode = el<HTMLDivElement>("sliders");
  for (const def of SLIDERS) {
    const wrap = document.createElement("label");
    wrap.textContent = def.label;
    const input = document.createElement("input");
    input.type = "range";
    input.min = String(def.min);
    input.max = String(def.max);
    input.step = String(def.step);
    input.value = String(params[def.param]);
    const valueNode = document.createElement("span");
    valueNode.textContent = String(params[def.param]);
    input.addEventListener("input", () => {
      params[def.param] = Number(input.value);
      valueNode.textContent = input.value;
      scheduler.request({ ...params });
    });
    wrap.append(input, valueNode);
    slidersNode.append(wrap);
  }

  let playback: Playback | null = null;
  el<HTMLButtonElement>("play").addEventListener("click", () => {
    if (playback && playback.state === "paused") {
      playback.play();
      return;
    }
    playback = new Playback(1.0, params.sigma < 1.0 ? params.sigma : 0.9, 21, async (sigma) => {
      const result = await fetchScene(baseUrl, { ...params, sigma }, httpFetch);
      if (!result.ok) throw new Error(result.message);
      lastScene = result.scene;
      renderer.showScene(result.scene);
      showMetrics(result.scene);
    });
    playback.play();
  });
  el<HTMLButtonElement>("pause").addEventListener("click", () => playback?.pause());

  scheduler.request({ ...params });
  void lastScene;
}

if (typeof document !== "undefined" && document.getElementById("view")) {
  startExplorer();
}
