/**
 * Metrics panel contents, taken verbatim from a fetched scene. The client
 * never recomputes physics; the service is the single source of truth.
 */
import { Scene } from "./schema";

export interface MetricRow {
  label: string;
  value: string;
}

const fmt = (v: number) => v.toFixed(6);

export function metricsFromScene(scene: Scene): MetricRow[] {
  const c = scene.computed;
  const rows: MetricRow[] = [];
  c.b_per_family.forEach((b, i) => rows.push({ label: `B family ${i} [mm]`, value: fmt(b) }));
  rows.push({ label: "B actual [mm]", value: fmt(c.b_actual) });
  rows.push({ label: "equilibrium residual [mm²]", value: fmt(c.equilibrium_residual) });
  c.inclination_angles.forEach((a, i) =>
    rows.push({ label: `inclination ${i} [°]`, value: ((a * 180) / Math.PI).toFixed(2) }),
  );
  c.strains.forEach((s, i) => rows.push({ label: `strain ${i}`, value: fmt(s) }));
  rows.push({ label: "collisions", value: String(scene.collisions.length) });
  return rows;
}
