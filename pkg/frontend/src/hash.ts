/**
 * Deterministic 64-bit FNV-1a hash of mesh data, used to compare
 * rendered droplets across replays without pixel comparison.
 */
import { DropletsPayload, Mesh } from "./schemas.js";

const FNV_OFFSET = 0xcbf29ce484222325n;
const FNV_PRIME = 0x100000001b3n;
const MASK = 0xffffffffffffffffn;

export function fnv1a64(text: string): string {
  let hash = FNV_OFFSET;
  for (let i = 0; i < text.length; i++) {
    hash ^= BigInt(text.charCodeAt(i) & 0xff);
    hash = (hash * FNV_PRIME) & MASK;
    hash ^= BigInt(text.charCodeAt(i) >> 8);
    hash = (hash * FNV_PRIME) & MASK;
  }
  return hash.toString(16).padStart(16, "0");
}

export function meshHash(mesh: Mesh): string {
  return fnv1a64(
    JSON.stringify({
      label: mesh.label.name,
      n_theta: mesh.n_theta,
      n_phi: mesh.n_phi,
      r: mesh.r,
      eta: mesh.eta,
    }),
  );
}

export function payloadMeshHashes(payload: DropletsPayload): string[] {
  return payload.droplets.map((entry) => meshHash(entry.mesh));
}
