/**
 * Job log parsing: extract the framed noisy-simulation counts block and turn
 * it into histogram data for the completed-job view.
 */

export const LOG_FRAME = "########## Noisy Simulation ##########";
export const LOG_FRAME_END = "##########";

export interface HistogramBar {
  bitstring: string;
  count: number;
}

export interface Histogram {
  bars: HistogramBar[]; // sorted by bitstring
  totalShots: number;
}

/**
 * The counts line is the Python repr of a string->int dict, e.g.
 * {'00': 2048, '11': 2048}. Parse it without eval.
 */
export function parseCountsLine(line: string): Map<string, number> {
  const trimmed = line.trim();
  if (!trimmed.startsWith("{") || !trimmed.endsWith("}")) {
    throw new Error(`not a counts dict: ${line}`);
  }
  const out = new Map<string, number>();
  const inner = trimmed.slice(1, -1).trim();
  if (inner === "") return out;
  for (const part of inner.split(",")) {
    const m = part.trim().match(/^'([01]+)':\s*(\d+)$/);
    if (!m) throw new Error(`bad counts entry: ${part}`);
    out.set(m[1], Number(m[2]));
  }
  return out;
}

/** Find the framed counts block in the full log text; null when absent. */
export function extractCounts(logText: string): Map<string, number> | null {
  const lines = logText.split("\n");
  const start = lines.indexOf(LOG_FRAME);
  if (start < 0 || start + 2 >= lines.length) return null;
  if (lines[start + 2] !== LOG_FRAME_END) return null;
  return parseCountsLine(lines[start + 1]);
}

export function toHistogram(counts: Map<string, number>): Histogram {
  const bars = [...counts.entries()]
    .map(([bitstring, count]) => ({ bitstring, count }))
    .sort((a, b) => (a.bitstring < b.bitstring ? -1 : a.bitstring > b.bitstring ? 1 : 0));
  const totalShots = bars.reduce((acc, b) => acc + b.count, 0);
  return { bars, totalShots };
}

export function histogramFromLogs(logText: string): Histogram | null {
  const counts = extractCounts(logText);
  return counts === null ? null : toHistogram(counts);
}
