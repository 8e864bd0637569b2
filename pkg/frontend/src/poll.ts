/**
 * Fixed-interval polling (2 s) until the job reaches a terminal state.
 * The timer functions are injectable so tests can drive time synchronously.
 */

export const POLL_INTERVAL_MS = 2000;
export const TERMINAL_STATES = ["Completed", "Failed", "Unschedulable"] as const;

export function isTerminal(state: string): boolean {
  return (TERMINAL_STATES as readonly string[]).includes(state);
}

export interface PollerHooks {
  setTimeout: (fn: () => void, ms: number) => unknown;
  clearTimeout: (handle: unknown) => void;
}

const realHooks: PollerHooks = {
  setTimeout: (fn, ms) => setTimeout(fn, ms),
  clearTimeout: (h) => clearTimeout(h as Parameters<typeof clearTimeout>[0]),
};

/**
 * Calls `tick` immediately and then every POLL_INTERVAL_MS until `tick`
 * resolves true (terminal) or `stop` is invoked.
 */
export function startPolling(
  tick: () => Promise<boolean>,
  hooks: PollerHooks = realHooks,
  intervalMs: number = POLL_INTERVAL_MS,
): { stop: () => void } {
  let stopped = false;
  let handle: unknown = null;

  const run = async (): Promise<void> => {
    if (stopped) return;
    let done = false;
    try {
      done = await tick();
    } catch {
      // transient fetch errors: keep polling
    }
    if (!stopped && !done) {
      handle = hooks.setTimeout(() => void run(), intervalMs);
    }
  };
  void run();

  return {
    stop: () => {
      stopped = true;
      if (handle !== null) hooks.clearTimeout(handle);
    },
  };
}
