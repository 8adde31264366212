/**
 * Explorer parameter state, kept in sync with the page URL so any view is
 * shareable and reloadable.
 */
import { SLIDERS } from "./bounds";

export type Params = Record<string, number>;

export function defaultParams(): Params {
  const params: Params = {};
  for (const s of SLIDERS) params[s.param] = s.default;
  return params;
}

export function clampToBounds(param: string, value: number): number {
  const def = SLIDERS.find((s) => s.param === param);
  if (!def) return value;
  let v = Math.min(def.max, Math.max(def.min, value));
  if (def.integer) v = Math.round(v);
  return v;
}

/** Query-string parameters actually sent to /scene (n = 0 is omitted). */
export function toQuery(params: Params): URLSearchParams {
  const query = new URLSearchParams();
  for (const s of SLIDERS) {
    const v = params[s.param];
    if (s.param === "n" && v === 0) continue;
    if (s.param === "shift" && (params["n"] ?? 0) === 0) continue;
    query.set(s.param, String(v));
  }
  return query;
}

/** Restore state from a page query string; unknown keys are ignored and
 * out-of-range values clamped to the slider bounds. */
export function fromQuery(query: string | URLSearchParams): Params {
  const search = typeof query === "string" ? new URLSearchParams(query) : query;
  const params = defaultParams();
  for (const s of SLIDERS) {
    const raw = search.get(s.param);
    if (raw === null) continue;
    const value = Number(raw);
    if (Number.isFinite(value)) params[s.param] = clampToBounds(s.param, value);
  }
  return params;
}
