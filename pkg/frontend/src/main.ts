/**
 * Browser entry point: wires the control panel to a SessionController
 * and renders the droplet scene with three.js.  All state shown here
 * mirrors server responses; nothing is simulated locally.
 */
import * as THREE from "three";

import { ServiceClient, ServiceError } from "./api.js";
import { ANGLE_PRESETS, SessionController } from "./controls.js";
import { LogEvent } from "./schemas.js";
import { buildScene } from "./scene.js";

const SERVICE_URL =
  new URLSearchParams(window.location.search).get("service") ??
  "http://127.0.0.1:8000";
const SCENARIOS = ["maxq-4", "maxq-5", "soliton-6", "iso-12-1", "iso-4"];

const client = new ServiceClient(SERVICE_URL);
const controller = new SessionController(client);

const canvas = document.getElementById("view") as HTMLCanvasElement;
const renderer = new THREE.WebGLRenderer({ canvas, antialias: true });
const camera = new THREE.PerspectiveCamera(
  45,
  canvas.clientWidth / canvas.clientHeight,
  0.1,
  100,
);
camera.position.set(0, 0, 12);
let currentScene = new THREE.Scene();

function toast(message: string): void {
  const box = document.getElementById("toast")!;
  box.textContent = message;
  box.classList.add("visible");
  setTimeout(() => box.classList.remove("visible"), 4000);
}

async function guarded(action: () => Promise<void>): Promise<void> {
  try {
    await action();
  } catch (error) {
    toast(error instanceof ServiceError ? error.message : String(error));
  }
}

let nSpins = 2;
let logCache: LogEvent[] = [];

async function refresh(): Promise<void> {
  const payload = await controller.fetchDroplets();
  const normalize = (
    document.getElementById("normalize") as HTMLInputElement
  ).checked;
  currentScene = buildScene(payload, nSpins, {
    normalize,
    hideZero: true,
  }).scene;
  logCache = await controller.fetchLog();
  const scrub = document.getElementById("scrub") as HTMLInputElement;
  scrub.max = String(logCache.length - 1);
  scrub.value = scrub.max;
  const summary = controller.currentSummary;
  document.getElementById("status")!.textContent = summary
    ? `events: ${summary.events}  |hs|: ${summary.hs_norm.toFixed(6)}`
    : "";
}

function selectedSites(): number[] {
  const sites: number[] = [];
  document
    .querySelectorAll<HTMLInputElement>("#sites input:checked")
    .forEach((box) => sites.push(Number(box.value)));
  return sites;
}

function rebuildSiteBoxes(): void {
  const holder = document.getElementById("sites")!;
  holder.innerHTML = "";
  for (let k = 1; k <= nSpins; k++) {
    const label = document.createElement("label");
    const box = document.createElement("input");
    box.type = "checkbox";
    box.value = String(k);
    box.checked = true;
    label.append(box, String(k));
    holder.append(label);
  }
}

function wire(): void {
  const scenarioSelect = document.getElementById(
    "scenario",
  ) as HTMLSelectElement;
  for (const name of SCENARIOS) {
    const option = document.createElement("option");
    option.value = option.textContent = name;
    scenarioSelect.append(option);
  }
  document.getElementById("load")!.addEventListener("click", () =>
    guarded(async () => {
      await controller.loadScenario(scenarioSelect.value, 10.0);
      nSpins = controller.initialRequest?.spins.length ?? 2;
      rebuildSiteBoxes();
      await refresh();
    }),
  );
  for (const [name, angle] of Object.entries(ANGLE_PRESETS)) {
    document.getElementById(`pulse-${name.replace("/", "")}`)!.addEventListener(
      "click",
      () =>
        guarded(async () => {
          const axis = (
            document.getElementById("axis") as HTMLSelectElement
          ).value;
          await controller.applyPulse(selectedSites(), axis, angle);
          await refresh();
        }),
    );
  }
  document.getElementById("delay")!.addEventListener("click", () =>
    guarded(async () => {
      const ms = Number(
        (document.getElementById("delay-ms") as HTMLInputElement).value,
      );
      await controller.applyDelay(ms / 1000);
      await refresh();
    }),
  );
  document.getElementById("reset")!.addEventListener("click", () =>
    guarded(async () => {
      await controller.reset(controller.initialRequest?.rho0 ?? "I1z");
      await refresh();
    }),
  );
  document.getElementById("scrub")!.addEventListener("change", (event) =>
    guarded(async () => {
      const count = Number((event.target as HTMLInputElement).value);
      const { droplets } = await controller.scrubTo(logCache, count);
      const normalize = (
        document.getElementById("normalize") as HTMLInputElement
      ).checked;
      currentScene = buildScene(droplets, nSpins, {
        normalize,
        hideZero: true,
      }).scene;
    }),
  );
}

function animate(): void {
  requestAnimationFrame(animate);
  currentScene.rotation.y += 0.002;
  renderer.render(currentScene, camera);
}

wire();
animate();
