/** DOM builders for the cluster table, state timeline, and histogram. */

import { ClusterInfo, JobRecord, NodeInfo } from "../api.js";
import { Histogram } from "../logs.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  text?: string,
  className?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (text !== undefined) node.textContent = text;
  if (className !== undefined) node.className = className;
  return node;
}

const LABEL_COLUMNS: [keyof NodeInfo["labels"], string][] = [
  ["num_qubits", "Qubits"],
  ["avg_err2q", "Avg 2q err"],
  ["avg_err1q", "Avg 1q err"],
  ["avg_readout_err", "Avg readout err"],
  ["avg_t1_us", "Avg T1 (us)"],
  ["avg_t2_us", "Avg T2 (us)"],
  ["cpu_millicores", "CPU (m)"],
  ["mem_mb", "Mem (MB)"],
];

export function renderClusterTable(nodes: NodeInfo[], cluster: ClusterInfo): HTMLElement {
  const root = el("div", undefined, "cluster-view");
  root.appendChild(
    el(
      "p",
      `${cluster.num_nodes} nodes - queue depth ${cluster.queue_depth} - ` +
        `running: ${cluster.running_job ?? "idle"}`,
    ),
  );
  const table = el("table");
  const head = el("tr");
  head.appendChild(el("th", "Backend"));
  for (const [, title] of LABEL_COLUMNS) head.appendChild(el("th", title));
  table.appendChild(head);
  for (const n of nodes) {
    const row = el("tr");
    row.appendChild(el("td", n.id));
    for (const [key] of LABEL_COLUMNS) {
      const v = n.labels[key];
      row.appendChild(el("td", typeof v === "number" && !Number.isInteger(v) ? v.toFixed(4) : String(v)));
    }
    table.appendChild(row);
  }
  root.appendChild(table);
  return root;
}

export function renderTimeline(rec: JobRecord): HTMLElement {
  const root = el("div", undefined, "timeline");
  root.appendChild(el("h3", `${rec.id} - ${rec.state}`));
  if (rec.decision) {
    root.appendChild(el("p", `scheduled on ${rec.decision}`));
  }
  const list = el("ol");
  const entries = Object.entries(rec.timestamps).sort((a, b) => a[1] - b[1]);
  for (const [state, ts] of entries) {
    list.appendChild(el("li", `${state} at ${new Date(ts * 1000).toISOString()}`));
  }
  root.appendChild(list);
  return root;
}

export function renderHistogram(h: Histogram): HTMLElement {
  const root = el("div", undefined, "histogram");
  root.appendChild(el("p", `${h.totalShots} shots`));
  const max = Math.max(1, ...h.bars.map((b) => b.count));
  for (const bar of h.bars) {
    const row = el("div", undefined, "bar-row");
    row.appendChild(el("code", bar.bitstring));
    const fill = el("span", undefined, "bar");
    fill.style.width = `${(100 * bar.count) / max}%`;
    row.appendChild(fill);
    row.appendChild(el("span", String(bar.count)));
    root.appendChild(row);
  }
  return root;
}

export function renderPendingBanner(message: string): HTMLElement {
  return el("p", message, "pending-banner");
}
