/**
 * Timeline scrubbing against the scripted service: loading the
 * iso-12-1 scenario log and scrubbing to the 30 ms mark must show the
 * spin-1/2 droplet lobe flipped (phase red -> green at the +x point),
 * exactly as the captured server meshes dictate.
 */
import { describe, expect, it } from "vitest";

import { ServiceClient } from "../src/api.js";
import { SessionController } from "../src/controls.js";
import { phaseColor } from "../src/geometry.js";
import { DropletsPayload, LogEvent } from "../src/schemas.js";
import { ScriptedService } from "./scripted.js";

import logFixture from "./fixtures/iso-12-1.log.json";

function plusXPhase(payload: DropletsPayload): number {
  const entry = payload.droplets.find((d) => d.label.name === "{1}")!;
  const { n_theta: nTheta, n_phi: nPhi, eta } = entry.mesh;
  // theta = pi/2, phi = 0: the +x direction
  return eta[Math.floor(nTheta / 2) * nPhi];
}

describe("iso-12-1 timeline scrub", () => {
  const log = logFixture.events as LogEvent[];

  async function scrubbed(count: number): Promise<DropletsPayload> {
    const service = new ScriptedService();
    const client = new ServiceClient("http://scripted", service.fetch);
    const controller = new SessionController(client, "16x32");
    const { droplets } = await controller.scrubTo(log, count);
    return droplets;
  }

  it("starts with a red +x lobe", async () => {
    const payload = await scrubbed(0);
    const [r, g] = phaseColor(plusXPhase(payload));
    expect(r).toBeCloseTo(1);
    expect(g).toBeCloseTo(0);
  });

  it("shows the flipped (green) lobe at 30 ms", async () => {
    const payload = await scrubbed(30); // 30 delays of 1 ms
    const phase = plusXPhase(payload);
    expect(Math.abs(phase - Math.PI)).toBeLessThan(1e-9);
    const [r, g] = phaseColor(phase);
    expect(g).toBeCloseTo(1);
    expect(r).toBeCloseTo(0);
  });

  it("every scrub is served, never computed locally", async () => {
    const service = new ScriptedService();
    const client = new ServiceClient("http://scripted", service.fetch);
    const controller = new SessionController(client, "16x32");
    await controller.scrubTo(log, 15);
    // the scripted service saw a fresh session with exactly 15 delays
    const sessions = [...service.sessions.values()];
    expect(sessions.length).toBe(1);
    expect(sessions[0].delays).toBe(15);
  });
});
