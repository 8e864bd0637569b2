/** Typed client for the scheduler's HTTP contract. */

import { JobSpecBody } from "./wizard.js";

export interface ApiError {
  code: string;
  message: string;
  detail?: { field?: string } | null;
}

export interface JobRecord {
  id: string;
  state: string;
  decision: string | null;
  score_table: Record<string, { value?: number; failed?: boolean }>;
  timestamps: Record<string, number>;
  spec: { name: string; num_qubits: number };
}

export interface NodeInfo {
  id: string;
  labels: {
    num_qubits: number;
    avg_err2q: number;
    avg_err1q: number;
    avg_readout_err: number;
    avg_t1_us: number;
    avg_t2_us: number;
    cpu_millicores: number;
    mem_mb: number;
  };
}

export interface ClusterInfo {
  num_nodes: number;
  queue_depth: number;
  running_job: string | null;
}

export class ApiFailure extends Error {
  constructor(
    readonly status: number,
    readonly body: ApiError,
  ) {
    super(`${body.code}: ${body.message}`);
  }
}

type Fetch = typeof fetch;

export class Client {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: Fetch = fetch,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    if (!resp.ok) {
      let body: ApiError;
      try {
        body = (await resp.json()) as ApiError;
      } catch {
        body = { code: "ApiError", message: `HTTP ${resp.status}` };
      }
      throw new ApiFailure(resp.status, body);
    }
    return (await resp.json()) as T;
  }

  submitJob(body: JobSpecBody): Promise<{ job_id: string }> {
    return this.request("/jobs", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  getJob(jobId: string): Promise<JobRecord> {
    return this.request(`/jobs/${jobId}`);
  }

  async getLogs(jobId: string): Promise<string> {
    const resp = await this.fetchImpl(`${this.baseUrl}/jobs/${jobId}/logs`);
    if (!resp.ok) {
      const body = (await resp.json().catch(() => null)) as ApiError | null;
      throw new ApiFailure(
        resp.status,
        body ?? { code: "ApiError", message: `HTTP ${resp.status}` },
      );
    }
    return resp.text();
  }

  getNodes(): Promise<NodeInfo[]> {
    return this.request("/nodes");
  }

  getCluster(): Promise<ClusterInfo> {
    return this.request("/cluster");
  }

  score(jobName: string, backendId: string): Promise<{ value: number }> {
    return this.request("/score", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ job_name: jobName, backend_id: backendId }),
    });
  }
}
