/**
 * Client-side tube sweeping: scenes carry only yarn paths and radii, and
 * the viewer extrudes circular tubes with parallel-transport frames.
 */

export interface TubeGeometry {
  positions: Float32Array; // xyz triples, pointCount * segments vertices
  indices: Uint32Array; // triangle list, 2 * (pointCount - 1) * segments
}

type V3 = [number, number, number];

const sub = (a: V3, b: V3): V3 => [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
const cross = (a: V3, b: V3): V3 => [
  a[1] * b[2] - a[2] * b[1],
  a[2] * b[0] - a[0] * b[2],
  a[0] * b[1] - a[1] * b[0],
];
const dot = (a: V3, b: V3) => a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
const norm = (a: V3): V3 => {
  const n = Math.sqrt(dot(a, a));
  return [a[0] / n, a[1] / n, a[2] / n];
};

export function buildTube(points: V3[], radius: number, segments: number): TubeGeometry {
  if (points.length < 2) throw new Error("tube: need at least 2 points");
  if (segments < 4) throw new Error("tube: need at least 4 segments");
  if (!(radius > 0)) throw new Error("tube: radius must be > 0");

  const tangents: V3[] = [];
  for (let i = 0; i < points.length - 1; i++) {
    tangents.push(norm(sub(points[i + 1], points[i])));
  }
  tangents.push(tangents[tangents.length - 1]);

  let t = tangents[0];
  const ref: V3 = Math.abs(t[2]) < 0.9 ? [0, 0, 1] : [1, 0, 0];
  const d0 = dot(ref, t);
  let normal = norm([ref[0] - d0 * t[0], ref[1] - d0 * t[1], ref[2] - d0 * t[2]]);

  const positions = new Float32Array(points.length * segments * 3);
  let prev = t;
  for (let i = 0; i < points.length; i++) {
    const cur = tangents[i];
    if (i > 0) {
      const axis = cross(prev, cur);
      const s2 = dot(axis, axis);
      if (s2 > 1e-24) {
        // minimal rotation carrying prev onto cur, applied to the normal
        const c = dot(prev, cur);
        const k = (1 - c) / s2;
        const ad = dot(axis, normal);
        normal = norm([
          normal[0] * c + (axis[1] * normal[2] - axis[2] * normal[1]) + axis[0] * ad * k,
          normal[1] * c + (axis[2] * normal[0] - axis[0] * normal[2]) + axis[1] * ad * k,
          normal[2] * c + (axis[0] * normal[1] - axis[1] * normal[0]) + axis[2] * ad * k,
        ]);
      }
      prev = cur;
    }
    const binormal = cross(cur, normal);
    const p = points[i];
    for (let k = 0; k < segments; k++) {
      const phi = (2 * Math.PI * k) / segments;
      const cp = Math.cos(phi);
      const sp = Math.sin(phi);
      const base = (i * segments + k) * 3;
      positions[base] = p[0] + radius * (cp * normal[0] + sp * binormal[0]);
      positions[base + 1] = p[1] + radius * (cp * normal[1] + sp * binormal[1]);
      positions[base + 2] = p[2] + radius * (cp * normal[2] + sp * binormal[2]);
    }
  }

  const indices = new Uint32Array(2 * (points.length - 1) * segments * 3);
  let w = 0;
  for (let i = 0; i < points.length - 1; i++) {
    const ring = i * segments;
    const next = (i + 1) * segments;
    for (let k = 0; k < segments; k++) {
      const k1 = (k + 1) % segments;
      indices[w++] = ring + k;
      indices[w++] = next + k;
      indices[w++] = next + k1;
      indices[w++] = ring + k;
      indices[w++] = next + k1;
      indices[w++] = ring + k1;
    }
  }
  return { positions, indices };
}
