/**
 * Typed client for the spindrops HTTP service.  Every response is
 * validated against the zod schemas before use; validation failures and
 * HTTP errors surface as ServiceError with the server's detail text.
 */
import {
  DropletsPayload,
  DropletsPayloadSchema,
  ExpectationSchema,
  LogSchema,
  SequenceDocument,
  SequenceSchema,
  SessionCreated,
  SessionCreatedSchema,
  SessionLog,
  Summary,
  SummarySchema,
} from "./schemas.js";

export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<{ status: number; json(): Promise<unknown> }>;

export class ServiceError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
  }
}

export interface CreateSessionRequest {
  spins: string[];
  hamiltonian: { type: string; couplings: { sites: number[]; J: number }[] };
  rho0: string;
}

export class ServiceClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (url, init) =>
      fetch(url, init) as unknown as ReturnType<FetchLike>,
  ) {}

  private async request(
    path: string,
    init?: { method?: string; body?: unknown },
  ): Promise<unknown> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      method: init?.method ?? "GET",
      headers: { "content-type": "application/json" },
      body: init?.body === undefined ? undefined : JSON.stringify(init.body),
    });
    const payload = await response.json();
    if (response.status >= 400) {
      const detail =
        typeof payload === "object" && payload !== null && "detail" in payload
          ? String((payload as { detail: unknown }).detail)
          : `HTTP ${response.status}`;
      throw new ServiceError(response.status, detail);
    }
    return payload;
  }

  async getScenario(name: string, J?: number): Promise<SequenceDocument> {
    const query = J === undefined ? "" : `?J=${encodeURIComponent(J)}`;
    return SequenceSchema.parse(
      await this.request(`/scenarios/${encodeURIComponent(name)}${query}`),
    );
  }

  async createSession(body: CreateSessionRequest): Promise<SessionCreated> {
    return SessionCreatedSchema.parse(
      await this.request("/sessions", { method: "POST", body }),
    );
  }

  async pulse(
    sessionId: string,
    body: { sites: number[]; axis: string; angle: number },
  ): Promise<Summary> {
    return SummarySchema.parse(
      await this.request(`/sessions/${sessionId}/pulse`, {
        method: "POST",
        body,
      }),
    );
  }

  async delay(sessionId: string, seconds: number): Promise<Summary> {
    return SummarySchema.parse(
      await this.request(`/sessions/${sessionId}/delay`, {
        method: "POST",
        body: { seconds },
      }),
    );
  }

  async reset(sessionId: string, rho0: string): Promise<Summary> {
    return SummarySchema.parse(
      await this.request(`/sessions/${sessionId}/reset`, {
        method: "POST",
        body: { rho0 },
      }),
    );
  }

  async getDroplets(
    sessionId: string,
    grid = "64x128",
    scaling = "density",
  ): Promise<DropletsPayload> {
    return DropletsPayloadSchema.parse(
      await this.request(
        `/sessions/${sessionId}/droplets?grid=${grid}&scaling=${scaling}`,
      ),
    );
  }

  async getLog(sessionId: string): Promise<SessionLog> {
    return LogSchema.parse(await this.request(`/sessions/${sessionId}/log`));
  }

  async getExpectation(sessionId: string, op: string): Promise<number> {
    const body = ExpectationSchema.parse(
      await this.request(
        `/sessions/${sessionId}/expectation?op=${encodeURIComponent(op)}`,
      ),
    );
    return body.re;
  }
}
