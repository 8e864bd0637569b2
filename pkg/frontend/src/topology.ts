/**
 * Pure model behind the topology-drawing canvas.
 *
 * The editor state is the undirected edge set over `nodes` qubits; node
 * positions live in the rendering layer only and never reach the export.
 */

export interface TopologyJSON {
  nodes: number;
  edges: [number, number][];
}

const key = (a: number, b: number): string =>
  a < b ? `${a}-${b}` : `${b}-${a}`;

export class TopologyModel {
  readonly nodes: number;
  private readonly edgeSet = new Map<string, [number, number]>();

  constructor(nodes: number) {
    if (!Number.isInteger(nodes) || nodes < 1) {
      throw new Error(`node count must be a positive integer, got ${nodes}`);
    }
    this.nodes = nodes;
  }

  private check(a: number, b: number): void {
    for (const v of [a, b]) {
      if (!Number.isInteger(v) || v < 0 || v >= this.nodes) {
        throw new Error(`node ${v} out of range 0..${this.nodes - 1}`);
      }
    }
  }

  /** Add an edge; self-loops are rejected and leave the graph unchanged. */
  addEdge(a: number, b: number): boolean {
    this.check(a, b);
    if (a === b) return false;
    const k = key(a, b);
    if (this.edgeSet.has(k)) return false;
    this.edgeSet.set(k, a < b ? [a, b] : [b, a]);
    return true;
  }

  removeEdge(a: number, b: number): boolean {
    this.check(a, b);
    return this.edgeSet.delete(key(a, b));
  }

  /** Toggle used by click-drag between two nodes. */
  toggleEdge(a: number, b: number): void {
    if (a === b) return;
    if (!this.addEdge(a, b)) this.removeEdge(a, b);
  }

  hasEdge(a: number, b: number): boolean {
    return this.edgeSet.has(key(a, b));
  }

  edgeCount(): number {
    return this.edgeSet.size;
  }

  /** Edges as sorted (lo, hi) pairs in lexicographic order. */
  edgeList(): [number, number][] {
    return [...this.edgeSet.values()].sort((x, y) => x[0] - y[0] || x[1] - y[1]);
  }

  clear(): void {
    this.edgeSet.clear();
  }

  /** Wire format shared with the service and the CLI. */
  toJSON(): TopologyJSON {
    return { nodes: this.nodes, edges: this.edgeList() };
  }

  static fromJSON(doc: TopologyJSON): TopologyModel {
    const m = new TopologyModel(doc.nodes);
    for (const [a, b] of doc.edges) {
      if (a === b) throw new Error(`self-loop ${a}-${b} in imported graph`);
      m.addEdge(a, b);
    }
    return m;
  }
}

/** The default-topology picker entries; identical to the CLI definitions. */
export type DefaultTopologyName =
  | "grid-4"
  | "line-6"
  | "ring-7"
  | "heavy-square-6"
  | "full-6";

export const DEFAULT_TOPOLOGY_NAMES: DefaultTopologyName[] = [
  "grid-4",
  "line-6",
  "ring-7",
  "heavy-square-6",
  "full-6",
];

function line(n: number): TopologyModel {
  const m = new TopologyModel(n);
  for (let i = 0; i + 1 < n; i++) m.addEdge(i, i + 1);
  return m;
}

function ring(n: number): TopologyModel {
  const m = line(n);
  m.addEdge(0, n - 1);
  return m;
}

function full(n: number): TopologyModel {
  const m = new TopologyModel(n);
  for (let a = 0; a < n; a++) for (let b = a + 1; b < n; b++) m.addEdge(a, b);
  return m;
}

export function defaultTopology(name: DefaultTopologyName): TopologyModel {
  switch (name) {
    case "grid-4": {
      const m = new TopologyModel(4);
      for (const [a, b] of [[0, 1], [2, 3], [0, 2], [1, 3]]) m.addEdge(a, b);
      return m;
    }
    case "line-6":
      return line(6);
    case "ring-7":
      return ring(7);
    case "heavy-square-6": {
      // 4-cycle 0-1-2-3 with pendant qubits on opposite corners
      const m = new TopologyModel(6);
      for (const [a, b] of [[0, 1], [1, 2], [2, 3], [0, 3], [0, 4], [2, 5]]) {
        m.addEdge(a, b);
      }
      return m;
    }
    case "full-6":
      return full(6);
  }
}
