/**
 * Zod schemas for the service JSON interfaces.  The frontend consumes
 * these documents verbatim and never mutates physics locally.
 */
import { z } from "zod";

export const LabelSchema = z.object({
  sites: z.array(z.number().int()),
  tableau: z.array(z.array(z.number().int())).nullable(),
  adhoc: z.string().nullable(),
  parents: z.array(z.number().int()).nullable(),
  name: z.string(),
});

export const MeshSchema = z.object({
  schema: z.literal("spindrops/mesh/v1"),
  label: LabelSchema,
  n_theta: z.number().int().min(2),
  n_phi: z.number().int().min(1),
  r: z.array(z.number()),
  eta: z.array(z.number()),
  r_max: z.number(),
}).refine(
  (m) => m.r.length === m.n_theta * m.n_phi && m.eta.length === m.r.length,
  { message: "mesh array lengths must equal n_theta * n_phi" },
);

export const CoeffSchema = z.object({
  j: z.number().int().min(0),
  m: z.number().int(),
  re: z.number(),
  im: z.number(),
});

export const DropletEntrySchema = z.object({
  label: LabelSchema,
  coeffs: z.array(CoeffSchema),
  zero: z.boolean(),
  weight: z.number(),
  mesh: MeshSchema,
});

export const DropletsPayloadSchema = z.object({
  state_hash: z.string(),
  grid: z.string(),
  scaling: z.enum(["raw", "density"]),
  droplets: z.array(DropletEntrySchema),
});

export const SummarySchema = z.object({
  session_id: z.string(),
  events: z.number().int().min(0),
  state_hash: z.string(),
  trace: z.object({ re: z.number(), im: z.number() }),
  hs_norm: z.number(),
  coherence_orders: z.record(z.string(), z.number()),
});

export const SessionCreatedSchema = z.object({
  session_id: z.string(),
  droplets: z.array(
    z.object({ label: LabelSchema, members: z.number().int() }),
  ),
  summary: SummarySchema,
});

export const CouplingSchema = z.object({
  sites: z.array(z.number().int()).length(2),
  J: z.number(),
});

export const HamiltonianSchema = z.object({
  type: z.string(),
  couplings: z.array(CouplingSchema).default([]),
});

export const SequenceEventSchema = z.union([
  z.object({
    type: z.literal("pulse"),
    sites: z.array(z.number().int()),
    axis: z.string(),
    angle: z.number(),
  }),
  z.object({ type: z.literal("delay"), seconds: z.number().min(0) }),
  z.object({
    type: z.literal("set_hamiltonian"),
    hamiltonian: HamiltonianSchema,
  }),
]);

export const SequenceSchema = z.object({
  schema: z.literal("spindrops/sequence/v1"),
  system: z.object({ spins: z.array(z.string()) }),
  hamiltonian: HamiltonianSchema,
  rho0: z.string(),
  events: z.array(SequenceEventSchema),
}).passthrough();

export const LogEventSchema = z
  .object({ type: z.string() })
  .passthrough();

export const LogSchema = z.object({
  session_id: z.string(),
  events: z.array(LogEventSchema),
});

export const ExpectationSchema = z.object({
  op: z.string(),
  re: z.number(),
  im: z.number(),
});

export type Label = z.infer<typeof LabelSchema>;
export type Mesh = z.infer<typeof MeshSchema>;
export type DropletEntry = z.infer<typeof DropletEntrySchema>;
export type DropletsPayload = z.infer<typeof DropletsPayloadSchema>;
export type Summary = z.infer<typeof SummarySchema>;
export type SessionCreated = z.infer<typeof SessionCreatedSchema>;
export type SequenceDocument = z.infer<typeof SequenceSchema>;
export type SequenceEvent = z.infer<typeof SequenceEventSchema>;
export type LogEvent = z.infer<typeof LogEventSchema>;
export type SessionLog = z.infer<typeof LogSchema>;
