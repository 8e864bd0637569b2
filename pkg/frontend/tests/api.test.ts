import { describe, expect, it } from "vitest";

import { ApiFailure, Client } from "../src/api.js";
import { resolveBaseUrl } from "../src/main.js";

type Handler = (url: string, init?: RequestInit) => Response;

function fakeFetch(handler: Handler): typeof fetch {
  return (async (input: RequestInfo | URL, init?: RequestInit) =>
    handler(String(input), init)) as typeof fetch;
}

const json = (status: number, body: unknown): Response =>
  new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });

describe("Client", () => {
  it("POSTs the job body and returns the assigned id", async () => {
    let seen: { url: string; body: string } | null = null;
    const client = new Client(
      "http://sched:8000",
      fakeFetch((url, init) => {
        seen = { url, body: String(init?.body) };
        return json(201, { job_id: "job-000007" });
      }),
    );
    const spec = {
      name: "t",
      image_name: "",
      num_qubits: 2,
      cpu_millicores: 1,
      mem_mb: 1,
      strategy: { type: "fidelity" as const, target: 0.5, qasm: "x" },
    };
    const { job_id } = await client.submitJob(spec);
    expect(job_id).toBe("job-000007");
    expect(seen!.url).toBe("http://sched:8000/jobs");
    expect(JSON.parse(seen!.body)).toEqual(spec);
  });

  it("maps an unknown job to an ApiFailure with status 404", async () => {
    const client = new Client(
      "http://sched:8000",
      fakeFetch(() => json(404, { code: "UnknownJob", message: "no such job" })),
    );
    const err = await client.getJob("job-999999").catch((e) => e as ApiFailure);
    expect(err).toBeInstanceOf(ApiFailure);
    expect((err as ApiFailure).status).toBe(404);
    expect((err as ApiFailure).body.code).toBe("UnknownJob");
  });

  it("getLogs returns plain text on 200 and ApiFailure on 409", async () => {
    const ok = new Client(
      "http://sched:8000",
      fakeFetch(() => new Response("line 1\nline 2\n", { status: 200 })),
    );
    expect(await ok.getLogs("job-000001")).toBe("line 1\nline 2\n");

    const pending = new Client(
      "http://sched:8000",
      fakeFetch(() => json(409, { code: "LogsNotReady", message: "job still running" })),
    );
    const err = await pending.getLogs("job-000001").catch((e) => e as ApiFailure);
    expect((err as ApiFailure).status).toBe(409);
    expect((err as ApiFailure).body.code).toBe("LogsNotReady");
  });
});

describe("resolveBaseUrl", () => {
  it("prefers the ?api query parameter, then the global, then the default", () => {
    expect(resolveBaseUrl("?api=http://other:9000", "http://g:1")).toBe("http://other:9000");
    expect(resolveBaseUrl("", "http://g:1")).toBe("http://g:1");
    expect(resolveBaseUrl("")).toBe("http://127.0.0.1:8000");
  });

  it("strips trailing slashes so paths join cleanly", () => {
    expect(resolveBaseUrl("?api=http://other:9000/")).toBe("http://other:9000");
  });
});
