/**
 * Session controller: the single mutation path between UI actions and
 * the service.  All physics happens server side; local state is only a
 * mirror of server responses.  At most one mutation is in flight at a
 * time; further actions queue behind it.
 */
import { CreateSessionRequest, ServiceClient } from "./api.js";
import {
  DropletsPayload,
  LogEvent,
  SequenceDocument,
  SessionCreated,
  Summary,
} from "./schemas.js";

export const ANGLE_PRESETS = { "pi/2": Math.PI / 2, pi: Math.PI } as const;

export class SessionController {
  private sessionId: string | null = null;
  private summary: Summary | null = null;
  private inventory: SessionCreated["droplets"] = [];
  private createRequest: CreateSessionRequest | null = null;
  private queue: Promise<unknown> = Promise.resolve();

  constructor(
    private readonly client: ServiceClient,
    public grid = "64x128",
    public scaling: "raw" | "density" = "density",
  ) {}

  get id(): string {
    if (this.sessionId === null) throw new Error("no active session");
    return this.sessionId;
  }

  get currentSummary(): Summary | null {
    return this.summary;
  }

  get dropletInventory(): SessionCreated["droplets"] {
    return this.inventory;
  }

  /** Serialize mutations: one in-flight request per session. */
  private enqueue<T>(action: () => Promise<T>): Promise<T> {
    const next = this.queue.then(action, action);
    this.queue = next.catch(() => undefined);
    return next;
  }

  async startSession(request: CreateSessionRequest): Promise<Summary> {
    return this.enqueue(async () => {
      const created = await this.client.createSession(request);
      this.sessionId = created.session_id;
      this.summary = created.summary;
      this.inventory = created.droplets;
      this.createRequest = request;
      return created.summary;
    });
  }

  /** Fetch a named scenario, open a session for its system, and apply
   * its events one by one through the service. */
  async loadScenario(name: string, J?: number): Promise<Summary> {
    const doc: SequenceDocument = await this.client.getScenario(name, J);
    await this.startSession({
      spins: doc.system.spins,
      hamiltonian: {
        type: doc.hamiltonian.type,
        couplings: doc.hamiltonian.couplings,
      },
      rho0: doc.rho0,
    });
    for (const event of doc.events) {
      await this.applyEvent(event as LogEvent);
    }
    return this.summary!;
  }

  async applyPulse(sites: number[], axis: string, angle: number): Promise<Summary> {
    return this.enqueue(async () => {
      this.summary = await this.client.pulse(this.id, { sites, axis, angle });
      return this.summary;
    });
  }

  async applyDelay(seconds: number): Promise<Summary> {
    return this.enqueue(async () => {
      this.summary = await this.client.delay(this.id, seconds);
      return this.summary;
    });
  }

  async reset(rho0: string): Promise<Summary> {
    return this.enqueue(async () => {
      this.summary = await this.client.reset(this.id, rho0);
      return this.summary;
    });
  }

  private async applyEvent(event: LogEvent): Promise<void> {
    if (event.type === "pulse") {
      await this.applyPulse(
        event.sites as number[],
        event.axis as string,
        event.angle as number,
      );
    } else if (event.type === "delay") {
      await this.applyDelay(event.seconds as number);
    } else {
      throw new Error(`cannot replay event type ${event.type}`);
    }
  }

  async fetchDroplets(): Promise<DropletsPayload> {
    return this.client.getDroplets(this.id, this.grid, this.scaling);
  }

  async fetchLog(): Promise<LogEvent[]> {
    const log = await this.client.getLog(this.id);
    return log.events;
  }

  /**
   * Timeline scrubbing: replay the first `count` post-create events of
   * the given log in a fresh session and return its droplets.  The
   * replay goes through the service event by event, so the scrubbed
   * view is exactly what the server produced at that point.
   */
  async scrubTo(
    log: LogEvent[],
    count: number,
  ): Promise<{ controller: SessionController; droplets: DropletsPayload }> {
    const create = log[0];
    if (!create || create.type !== "create") {
      throw new Error("log must start with a create event");
    }
    const replayed = new SessionController(this.client, this.grid, this.scaling);
    await replayed.startSession({
      spins: create.spins as string[],
      hamiltonian: create.hamiltonian as CreateSessionRequest["hamiltonian"],
      rho0: create.rho0 as string,
    });
    const events = log.slice(1, 1 + count);
    for (const event of events) {
      await replayed.applyEvent(event);
    }
    return { controller: replayed, droplets: await replayed.fetchDroplets() };
  }

  /** Re-create the current session from scratch and replay its full log. */
  async replaySelf(): Promise<DropletsPayload> {
    const log = await this.fetchLog();
    const { droplets } = await this.scrubTo(log, log.length - 1);
    return droplets;
  }

  get initialRequest(): CreateSessionRequest | null {
    return this.createRequest;
  }
}
