/**
 * 3-step job wizard state machine.
 *
 * Step 1: job details (name, image, qubits, cpu, mem).
 * Step 2: optional node constraints.
 * Step 3: scheduling strategy — a fidelity target with a QASM payload, a
 * hand-drawn topology, or one of the default topologies.
 *
 * `buildBody` only succeeds once every client-side invariant holds, so the
 * emitted document always validates against the shared JobSpec schema.
 */

import {
  DefaultTopologyName,
  TopologyJSON,
  TopologyModel,
  defaultTopology,
} from "./topology.js";

export type Step = 1 | 2 | 3;

export interface JobFields {
  name: string;
  imageName: string;
  numQubits: number;
  cpuMillicores: number;
  memMb: number;
}

export interface ConstraintFields {
  maxAvgErr2q?: number;
  maxAvgErr1q?: number;
  maxAvgReadoutErr?: number;
  minAvgT1Us?: number;
  minAvgT2Us?: number;
}

export type StrategyChoice =
  | { kind: "fidelity"; target: number; qasm: string }
  | { kind: "topology"; graph: TopologyJSON }
  | { kind: "default-topology"; name: DefaultTopologyName };

export interface WizardState {
  step: Step;
  job: JobFields;
  constraints: ConstraintFields;
  strategy: StrategyChoice | null;
}

export interface FieldError {
  field: string;
  message: string;
}

export function initialWizardState(): WizardState {
  return {
    step: 1,
    job: { name: "", imageName: "", numQubits: 1, cpuMillicores: 100, memMb: 128 },
    constraints: {},
    strategy: null,
  };
}

const isPosInt = (v: number): boolean => Number.isInteger(v) && v >= 1;

export function validateStep1(job: JobFields): FieldError[] {
  const errors: FieldError[] = [];
  if (job.name.trim() === "") errors.push({ field: "name", message: "required" });
  if (!isPosInt(job.numQubits)) {
    errors.push({ field: "num_qubits", message: "must be a positive integer" });
  }
  if (!isPosInt(job.cpuMillicores)) {
    errors.push({ field: "cpu_millicores", message: "must be a positive integer" });
  }
  if (!isPosInt(job.memMb)) {
    errors.push({ field: "mem_mb", message: "must be a positive integer" });
  }
  return errors;
}

export function validateStep2(c: ConstraintFields): FieldError[] {
  const errors: FieldError[] = [];
  const prob: [string, number | undefined][] = [
    ["max_avg_err2q", c.maxAvgErr2q],
    ["max_avg_err1q", c.maxAvgErr1q],
    ["max_avg_readout_err", c.maxAvgReadoutErr],
  ];
  for (const [field, v] of prob) {
    if (v !== undefined && !(v >= 0 && v <= 1)) {
      errors.push({ field, message: "must be a probability in [0, 1]" });
    }
  }
  const times: [string, number | undefined][] = [
    ["min_avg_t1_us", c.minAvgT1Us],
    ["min_avg_t2_us", c.minAvgT2Us],
  ];
  for (const [field, v] of times) {
    if (v !== undefined && !(v >= 0)) {
      errors.push({ field, message: "must be non-negative (microseconds)" });
    }
  }
  return errors;
}

export function validateStep3(s: StrategyChoice | null): FieldError[] {
  if (s === null) {
    return [{ field: "strategy", message: "choose a strategy" }];
  }
  if (s.kind === "fidelity") {
    const errors: FieldError[] = [];
    if (!(s.target > 0 && s.target <= 1)) {
      errors.push({ field: "strategy.target", message: "must be in (0, 1]" });
    }
    if (s.qasm.trim() === "") {
      errors.push({ field: "strategy.qasm", message: "attach a QASM file" });
    }
    return errors;
  }
  if (s.kind === "topology" && s.graph.nodes < 1) {
    return [{ field: "strategy.graph", message: "graph is empty" }];
  }
  return [];
}

export function validateState(state: WizardState): FieldError[] {
  return [
    ...validateStep1(state.job),
    ...validateStep2(state.constraints),
    ...validateStep3(state.strategy),
  ];
}

export function canAdvance(state: WizardState): boolean {
  if (state.step === 1) return validateStep1(state.job).length === 0;
  if (state.step === 2) return validateStep2(state.constraints).length === 0;
  return false;
}

export function advance(state: WizardState): WizardState {
  if (!canAdvance(state)) return state;
  return { ...state, step: (state.step + 1) as Step };
}

export function back(state: WizardState): WizardState {
  return state.step === 1 ? state : { ...state, step: (state.step - 1) as Step };
}

/** The JobSpec document POSTed to /jobs. */
export interface JobSpecBody {
  name: string;
  image_name: string;
  num_qubits: number;
  cpu_millicores: number;
  mem_mb: number;
  constraints?: Record<string, number>;
  strategy:
    | { type: "fidelity"; target: number; qasm: string }
    | { type: "topology"; graph: TopologyJSON };
}

export function buildBody(state: WizardState): JobSpecBody {
  const errors = validateState(state);
  if (errors.length > 0) {
    throw new Error(`wizard state invalid: ${errors.map((e) => e.field).join(", ")}`);
  }
  const s = state.strategy!;
  const strategy =
    s.kind === "fidelity"
      ? { type: "fidelity" as const, target: s.target, qasm: s.qasm }
      : {
          type: "topology" as const,
          graph:
            s.kind === "topology"
              ? TopologyModel.fromJSON(s.graph).toJSON()
              : defaultTopology(s.name).toJSON(),
        };

  const body: JobSpecBody = {
    name: state.job.name,
    image_name: state.job.imageName,
    num_qubits: state.job.numQubits,
    cpu_millicores: state.job.cpuMillicores,
    mem_mb: state.job.memMb,
    strategy,
  };
  const c = state.constraints;
  const constraints: Record<string, number> = {};
  if (c.maxAvgErr2q !== undefined) constraints["max_avg_err2q"] = c.maxAvgErr2q;
  if (c.maxAvgErr1q !== undefined) constraints["max_avg_err1q"] = c.maxAvgErr1q;
  if (c.maxAvgReadoutErr !== undefined) {
    constraints["max_avg_readout_err"] = c.maxAvgReadoutErr;
  }
  if (c.minAvgT1Us !== undefined) constraints["min_avg_t1_us"] = c.minAvgT1Us;
  if (c.minAvgT2Us !== undefined) constraints["min_avg_t2_us"] = c.minAvgT2Us;
  if (Object.keys(constraints).length > 0) body.constraints = constraints;
  return body;
}
