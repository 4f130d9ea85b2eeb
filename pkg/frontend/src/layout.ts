/**
 * Spatial arrangement of droplets mirroring the usual presentation:
 * linear droplets sit on spin nodes arranged on a circle, bilinear
 * droplets on the edges between their two nodes, and droplets of three
 * or more spins go to labeled panels in a row below.  The identity
 * droplet sits at the center.
 */
import { Label } from "./schemas.js";

export interface Placement {
  kind: "center" | "node" | "edge" | "panel";
  position: [number, number, number];
  panelIndex?: number;
}

const NODE_RADIUS = 3;
const PANEL_SPACING = 2.5;
const PANEL_Y = -NODE_RADIUS - 2.5;

export function nodePosition(
  site: number,
  nSpins: number,
): [number, number, number] {
  const angle = (2 * Math.PI * (site - 1)) / nSpins - Math.PI / 2;
  return [NODE_RADIUS * Math.cos(angle), -NODE_RADIUS * Math.sin(angle), 0];
}

export function layoutDroplets(
  labels: Label[],
  nSpins: number,
): Map<string, Placement> {
  const out = new Map<string, Placement>();
  const panels = labels
    .filter((label) => label.sites.length >= 3)
    .map((label) => label.name)
    .sort();
  for (const label of labels) {
    const g = label.sites.length;
    if (g === 0) {
      out.set(label.name, { kind: "center", position: [0, 0, 0] });
    } else if (g === 1) {
      out.set(label.name, {
        kind: "node",
        position: nodePosition(label.sites[0], nSpins),
      });
    } else if (g === 2) {
      const a = nodePosition(label.sites[0], nSpins);
      const b = nodePosition(label.sites[1], nSpins);
      out.set(label.name, {
        kind: "edge",
        position: [(a[0] + b[0]) / 2, (a[1] + b[1]) / 2, (a[2] + b[2]) / 2],
      });
    } else {
      const panelIndex = panels.indexOf(label.name);
      const x = (panelIndex - (panels.length - 1) / 2) * PANEL_SPACING;
      out.set(label.name, {
        kind: "panel",
        position: [x, PANEL_Y, 0],
        panelIndex,
      });
    }
  }
  return out;
}
