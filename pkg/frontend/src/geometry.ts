/**
 * Turn a sampled droplet mesh into raw vertex buffers.  The radius is
 * the sampled |f|; the vertex color encodes the phase as a hue wheel
 * with phase 0 red and phase pi green.  The triangle index buffer only
 * depends on the grid, so it is cached and shared across droplets.
 */
import { Mesh } from "./schemas.js";

export interface DropletBuffers {
  positions: Float32Array;
  colors: Float32Array;
  index: Uint32Array;
  rMax: number;
}

const indexCache = new Map<string, Uint32Array>();

/** Triangles over the theta x phi grid, wrapping around in phi. */
export function sharedGridIndex(nTheta: number, nPhi: number): Uint32Array {
  const key = `${nTheta}x${nPhi}`;
  const cached = indexCache.get(key);
  if (cached) return cached;
  const triangles: number[] = [];
  for (let t = 0; t < nTheta - 1; t++) {
    for (let p = 0; p < nPhi; p++) {
      const pNext = (p + 1) % nPhi;
      const a = t * nPhi + p;
      const b = t * nPhi + pNext;
      const c = (t + 1) * nPhi + p;
      const d = (t + 1) * nPhi + pNext;
      triangles.push(a, c, b, b, c, d);
    }
  }
  const index = new Uint32Array(triangles);
  indexCache.set(key, index);
  return index;
}

/** Hue-wheel color for a phase: 0 -> red, pi -> green, wrapping back to red. */
export function phaseColor(eta: number): [number, number, number] {
  const twoPi = 2 * Math.PI;
  let phase = eta % twoPi;
  if (phase < 0) phase += twoPi;
  // piecewise-linear hue: 0 at phase 0, 120 deg at phase pi, 360 at 2 pi
  const hue =
    phase <= Math.PI
      ? (phase / Math.PI) * 120
      : 120 + ((phase - Math.PI) / Math.PI) * 240;
  return hslToRgb(hue / 360, 1.0, 0.5);
}

function hslToRgb(h: number, s: number, l: number): [number, number, number] {
  const q = l < 0.5 ? l * (1 + s) : l + s - l * s;
  const p = 2 * l - q;
  const channel = (t: number): number => {
    let x = t;
    if (x < 0) x += 1;
    if (x > 1) x -= 1;
    if (x < 1 / 6) return p + (q - p) * 6 * x;
    if (x < 1 / 2) return q;
    if (x < 2 / 3) return p + (q - p) * (2 / 3 - x) * 6;
    return p;
  };
  return [channel(h + 1 / 3), channel(h), channel(h - 1 / 3)];
}

export interface GeometryOptions {
  /** Scale radii so the largest becomes 1 (geometry only; data untouched). */
  normalize?: boolean;
}

export function buildDropletBuffers(
  mesh: Mesh,
  options: GeometryOptions = {},
): DropletBuffers {
  const { n_theta: nTheta, n_phi: nPhi, r, eta } = mesh;
  const scale = options.normalize && mesh.r_max > 0 ? 1 / mesh.r_max : 1;
  const positions = new Float32Array(nTheta * nPhi * 3);
  const colors = new Float32Array(nTheta * nPhi * 3);
  for (let t = 0; t < nTheta; t++) {
    const theta = (Math.PI * t) / (nTheta - 1);
    for (let p = 0; p < nPhi; p++) {
      const phi = (2 * Math.PI * p) / nPhi;
      const i = t * nPhi + p;
      const radius = r[i] * scale;
      positions[3 * i] = radius * Math.sin(theta) * Math.cos(phi);
      positions[3 * i + 1] = radius * Math.sin(theta) * Math.sin(phi);
      positions[3 * i + 2] = radius * Math.cos(theta);
      const [red, green, blue] = phaseColor(eta[i]);
      colors[3 * i] = red;
      colors[3 * i + 1] = green;
      colors[3 * i + 2] = blue;
    }
  }
  return {
    positions,
    colors,
    index: sharedGridIndex(nTheta, nPhi),
    rMax: mesh.r_max,
  };
}
