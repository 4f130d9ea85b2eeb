import { describe, expect, it } from "vitest";

import {
  DropletsPayloadSchema,
  LogSchema,
  SequenceSchema,
  SessionCreatedSchema,
} from "../src/schemas.js";

import scenarioFixture from "./fixtures/iso-12-1.sequence.json";
import sessionFixture from "./fixtures/iso-12-1.session.json";
import dropletsFixture from "./fixtures/iso-12-1.droplets.json";
import logFixture from "./fixtures/iso-12-1.log.json";

describe("service schemas", () => {
  it("accepts the captured scenario document", () => {
    const doc = SequenceSchema.parse(scenarioFixture);
    expect(doc.system.spins).toEqual(["1/2", "1"]);
    expect(doc.events.length).toBe(100);
  });

  it("accepts the captured session and log", () => {
    const created = SessionCreatedSchema.parse(sessionFixture);
    expect(created.droplets.length).toBe(5); // Id, {1}, {2}, and two pair droplets
    const log = LogSchema.parse(logFixture);
    expect(log.events[0].type).toBe("create");
  });

  it("accepts every captured droplets payload", () => {
    for (const snapshot of Object.values(dropletsFixture)) {
      const payload = DropletsPayloadSchema.parse(snapshot);
      expect(payload.scaling).toBe("density");
      for (const entry of payload.droplets) {
        expect(entry.mesh.r.length).toBe(entry.mesh.n_theta * entry.mesh.n_phi);
      }
    }
  });

  it("rejects a mesh with inconsistent array lengths", () => {
    const snapshot = structuredClone(
      (dropletsFixture as Record<string, unknown>)["0"],
    ) as { droplets: { mesh: { r: number[] } }[] };
    snapshot.droplets[0].mesh.r.pop();
    expect(() => DropletsPayloadSchema.parse(snapshot)).toThrow();
  });

  it("rejects an unknown scaling", () => {
    const snapshot = structuredClone(
      (dropletsFixture as Record<string, unknown>)["0"],
    ) as { scaling: string };
    snapshot.scaling = "other";
    expect(() => DropletsPayloadSchema.parse(snapshot)).toThrow();
  });
});
