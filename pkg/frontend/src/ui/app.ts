/**
 * Application shell: wires the wizard, canvas editor, cluster view, and the
 * polling log viewer onto the page. All orchestration logic lives in the
 * framework-free modules; this file only moves data between them and the DOM.
 */

import { ApiFailure, Client } from "../api.js";
import { histogramFromLogs } from "../logs.js";
import { isTerminal, startPolling } from "../poll.js";
import {
  DEFAULT_TOPOLOGY_NAMES,
  DefaultTopologyName,
  TopologyModel,
  defaultTopology,
} from "../topology.js";
import {
  StrategyChoice,
  WizardState,
  advance,
  back,
  buildBody,
  initialWizardState,
  validateState,
  validateStep3,
} from "../wizard.js";
import { CanvasEditor } from "./canvas.js";
import {
  renderClusterTable,
  renderHistogram,
  renderPendingBanner,
  renderTimeline,
} from "./views.js";

export class App {
  private state: WizardState = initialWizardState();
  private poller: { stop: () => void } | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly client: Client,
  ) {}

  start(): void {
    this.renderWizard();
    void this.refreshCluster();
  }

  // -- wizard ---------------------------------------------------------------

  private field(labelText: string, input: HTMLElement): HTMLElement {
    const wrap = document.createElement("label");
    wrap.append(labelText, input);
    return wrap;
  }

  private numberInput(value: number, onInput: (v: number) => void): HTMLInputElement {
    const input = document.createElement("input");
    input.type = "number";
    input.value = String(value);
    input.addEventListener("input", () => onInput(Number(input.value)));
    return input;
  }

  private renderWizard(): void {
    const host = this.root.querySelector("#wizard");
    if (!host) return;
    host.textContent = "";
    const heading = document.createElement("h2");
    heading.textContent = `Submit a job - step ${this.state.step} of 3`;
    host.appendChild(heading);

    if (this.state.step === 1) this.renderStep1(host);
    else if (this.state.step === 2) this.renderStep2(host);
    else this.renderStep3(host);

    const nav = document.createElement("div");
    if (this.state.step > 1) {
      const b = document.createElement("button");
      b.textContent = "Back";
      b.addEventListener("click", () => {
        this.state = back(this.state);
        this.renderWizard();
      });
      nav.appendChild(b);
    }
    if (this.state.step < 3) {
      const n = document.createElement("button");
      n.textContent = "Next";
      n.addEventListener("click", () => {
        const next = advance(this.state);
        if (next === this.state) {
          this.showErrors(host);
          return;
        }
        this.state = next;
        this.renderWizard();
      });
      nav.appendChild(n);
    } else {
      const submit = document.createElement("button");
      submit.textContent = "Submit";
      submit.addEventListener("click", () => void this.submit(host));
      nav.appendChild(submit);
    }
    host.appendChild(nav);
  }

  private showErrors(host: Element, extra?: { field: string; message: string }[]): void {
    host.querySelectorAll(".errors").forEach((e) => e.remove());
    const errors = extra ?? validateState(this.state);
    if (errors.length === 0) return;
    const list = document.createElement("ul");
    list.className = "errors";
    for (const e of errors) {
      const li = document.createElement("li");
      li.textContent = `${e.field}: ${e.message}`;
      list.appendChild(li);
    }
    host.appendChild(list);
  }

  private renderStep1(host: Element): void {
    const j = this.state.job;
    const name = document.createElement("input");
    name.value = j.name;
    name.addEventListener("input", () => (j.name = name.value));
    const image = document.createElement("input");
    image.value = j.imageName;
    image.addEventListener("input", () => (j.imageName = image.value));
    host.append(
      this.field("Job name", name),
      this.field("Docker image name", image),
      this.field("Number of qubits", this.numberInput(j.numQubits, (v) => (j.numQubits = v))),
      this.field("CPU (millicores)", this.numberInput(j.cpuMillicores, (v) => (j.cpuMillicores = v))),
      this.field("Memory (MB)", this.numberInput(j.memMb, (v) => (j.memMb = v))),
    );
  }

  private renderStep2(host: Element): void {
    const c = this.state.constraints;
    const opt = (label: string, set: (v: number | undefined) => void): HTMLElement => {
      const input = document.createElement("input");
      input.type = "number";
      input.addEventListener("input", () =>
        set(input.value === "" ? undefined : Number(input.value)),
      );
      return this.field(label, input);
    };
    host.append(
      opt("Max avg 2q gate error (probability)", (v) => (c.maxAvgErr2q = v)),
      opt("Max avg 1q gate error (probability)", (v) => (c.maxAvgErr1q = v)),
      opt("Max avg readout error (probability)", (v) => (c.maxAvgReadoutErr = v)),
      opt("Min avg T1 (us)", (v) => (c.minAvgT1Us = v)),
      opt("Min avg T2 (us)", (v) => (c.minAvgT2Us = v)),
    );
  }

  private renderStep3(host: Element): void {
    const pick = document.createElement("select");
    for (const kind of ["fidelity", "draw topology", "default topology"]) {
      const o = document.createElement("option");
      o.value = kind;
      o.textContent = kind;
      pick.appendChild(o);
    }
    const pane = document.createElement("div");
    const render = (): void => {
      pane.textContent = "";
      if (pick.value === "fidelity") this.renderFidelityPane(pane);
      else if (pick.value === "draw topology") this.renderCanvasPane(pane);
      else this.renderDefaultPane(pane);
    };
    pick.addEventListener("change", render);
    host.append(this.field("Strategy", pick), pane);
    render();
  }

  private renderFidelityPane(pane: Element): void {
    const choice: StrategyChoice = { kind: "fidelity", target: 0.9, qasm: "" };
    this.state.strategy = choice;
    const target = this.numberInput(0.9, (v) => (choice.target = v));
    target.step = "0.01";
    const file = document.createElement("input");
    file.type = "file";
    file.accept = ".qasm";
    file.addEventListener("change", () => {
      const f = file.files?.[0];
      if (!f) return;
      void f.text().then((text) => (choice.qasm = text));
    });
    pane.append(
      this.field("Fidelity target (0, 1]", target),
      this.field("QASM file", file),
    );
  }

  private renderCanvasPane(pane: Element): void {
    const model = new TopologyModel(Math.max(1, this.state.job.numQubits));
    this.state.strategy = { kind: "topology", graph: model.toJSON() };
    const canvas = document.createElement("canvas");
    canvas.width = 420;
    canvas.height = 420;
    // the editor stays alive through its canvas event listeners
    new CanvasEditor(canvas, model, () => {
      this.state.strategy = { kind: "topology", graph: model.toJSON() };
    });
    const hint = document.createElement("p");
    hint.textContent = "Drag between qubits to draw or remove an interaction edge.";
    pane.append(hint, canvas);
  }

  private renderDefaultPane(pane: Element): void {
    const pick = document.createElement("select");
    for (const name of DEFAULT_TOPOLOGY_NAMES) {
      const o = document.createElement("option");
      o.value = name;
      o.textContent = name;
      pick.appendChild(o);
    }
    const preview = document.createElement("canvas");
    preview.width = 420;
    preview.height = 420;
    const apply = (): void => {
      const name = pick.value as DefaultTopologyName;
      // pre-populate the canvas with the chosen default topology
      const model = defaultTopology(name);
      this.state.strategy = { kind: "default-topology", name };
      new CanvasEditor(preview, model, () => {
        this.state.strategy = { kind: "topology", graph: model.toJSON() };
      });
    };
    pick.addEventListener("change", apply);
    pane.append(this.field("Default topology", pick), preview);
    apply();
  }

  private async submit(host: Element): Promise<void> {
    const errors = validateStep3(this.state.strategy);
    if (errors.length > 0 || validateState(this.state).length > 0) {
      this.showErrors(host);
      return;
    }
    try {
      const { job_id } = await this.client.submitJob(buildBody(this.state));
      this.watchJob(job_id);
    } catch (e) {
      if (e instanceof ApiFailure) {
        this.showErrors(host, [
          { field: e.body.detail?.field ?? e.body.code, message: e.body.message },
        ]);
      } else {
        this.showErrors(host, [{ field: "network", message: String(e) }]);
      }
    }
  }

  // -- job view -------------------------------------------------------------

  private watchJob(jobId: string): void {
    const host = this.root.querySelector("#job");
    if (!host) return;
    this.poller?.stop();
    this.poller = startPolling(async () => {
      let rec;
      try {
        rec = await this.client.getJob(jobId);
      } catch (e) {
        host.textContent = "";
        host.appendChild(
          renderPendingBanner(e instanceof ApiFailure && e.status === 404 ? `unknown job ${jobId}` : String(e)),
        );
        return true;
      }
      host.textContent = "";
      host.appendChild(renderTimeline(rec));
      if (!isTerminal(rec.state)) {
        host.appendChild(renderPendingBanner("logs pending - job still in flight"));
        return false;
      }
      try {
        const logs = await this.client.getLogs(jobId);
        const pre = document.createElement("pre");
        pre.textContent = logs;
        host.appendChild(pre);
        const h = histogramFromLogs(logs);
        if (h) host.appendChild(renderHistogram(h));
      } catch (e) {
        if (e instanceof ApiFailure && e.status === 409) {
          host.appendChild(renderPendingBanner("logs pending"));
          return false;
        }
        throw e;
      }
      void this.refreshCluster();
      return true;
    });
  }

  // -- cluster view ---------------------------------------------------------

  private async refreshCluster(): Promise<void> {
    const host = this.root.querySelector("#cluster");
    if (!host) return;
    try {
      const [nodes, cluster] = await Promise.all([
        this.client.getNodes(),
        this.client.getCluster(),
      ]);
      host.textContent = "";
      host.appendChild(renderClusterTable(nodes, cluster));
    } catch (e) {
      host.textContent = `cluster unavailable: ${String(e)}`;
    }
  }
}
