/**
 * three.js scene assembly: one vertex-colored surface per droplet,
 * placed by the label layout.  Geometry comes straight from the server
 * meshes; no spherical harmonics are evaluated client side.
 */
import * as THREE from "three";

import { buildDropletBuffers, GeometryOptions } from "./geometry.js";
import { layoutDroplets } from "./layout.js";
import { DropletsPayload } from "./schemas.js";

export interface DropletScene {
  scene: THREE.Scene;
  meshesByName: Map<string, THREE.Mesh>;
}

export function buildScene(
  payload: DropletsPayload,
  nSpins: number,
  options: GeometryOptions & { hideZero?: boolean } = {},
): DropletScene {
  const scene = new THREE.Scene();
  scene.add(new THREE.AmbientLight(0xffffff, 0.8));
  const key = new THREE.DirectionalLight(0xffffff, 0.7);
  key.position.set(3, 5, 4);
  scene.add(key);

  const placements = layoutDroplets(
    payload.droplets.map((d) => d.label),
    nSpins,
  );
  const meshesByName = new Map<string, THREE.Mesh>();
  for (const entry of payload.droplets) {
    if (options.hideZero && entry.zero) continue;
    const buffers = buildDropletBuffers(entry.mesh, options);
    const geometry = new THREE.BufferGeometry();
    geometry.setAttribute(
      "position",
      new THREE.BufferAttribute(buffers.positions, 3),
    );
    geometry.setAttribute("color", new THREE.BufferAttribute(buffers.colors, 3));
    geometry.setIndex(new THREE.BufferAttribute(buffers.index, 1));
    geometry.computeVertexNormals();
    const material = new THREE.MeshStandardMaterial({
      vertexColors: true,
      side: THREE.DoubleSide,
    });
    const mesh = new THREE.Mesh(geometry, material);
    const placement = placements.get(entry.label.name);
    if (placement) mesh.position.set(...placement.position);
    mesh.name = entry.label.name;
    scene.add(mesh);
    meshesByName.set(entry.label.name, mesh);
  }
  return { scene, meshesByName };
}
