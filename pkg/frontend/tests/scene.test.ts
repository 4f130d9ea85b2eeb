import { describe, expect, it } from "vitest";

import { buildScene } from "../src/scene.js";
import { DropletsPayloadSchema } from "../src/schemas.js";

import dropletsFixture from "./fixtures/iso-12-1.droplets.json";

const payload = DropletsPayloadSchema.parse(
  (dropletsFixture as Record<string, unknown>)["0"],
);

describe("buildScene", () => {
  it("creates one surface per droplet", () => {
    const { meshesByName } = buildScene(payload, 2);
    expect(meshesByName.size).toBe(payload.droplets.length);
    expect(meshesByName.has("{1}")).toBe(true);
  });

  it("hides empty droplets when requested", () => {
    const { meshesByName } = buildScene(payload, 2, { hideZero: true });
    const zeroNames = payload.droplets
      .filter((d) => d.zero)
      .map((d) => d.label.name);
    for (const name of zeroNames) {
      expect(meshesByName.has(name)).toBe(false);
    }
    expect(meshesByName.size).toBe(payload.droplets.length - zeroNames.length);
  });

  it("places droplets according to the layout", () => {
    const { meshesByName } = buildScene(payload, 2);
    const id = meshesByName.get("Id")!;
    expect([id.position.x, id.position.y, id.position.z]).toEqual([0, 0, 0]);
    const linear = meshesByName.get("{1}")!;
    expect(Math.hypot(linear.position.x, linear.position.y)).toBeGreaterThan(1);
  });
});
