/**
 * Browser entry point. The scheduler base URL is configurable via
 * ?api=http://host:port or a window.QORC_API_BASE global; it defaults to the
 * dev server's standard listen address.
 */

import { Client } from "./api.js";
import { App } from "./ui/app.js";

declare global {
  interface Window {
    QORC_API_BASE?: string;
  }
}

export function resolveBaseUrl(
  search: string,
  globalBase?: string,
  fallback = "http://127.0.0.1:8000",
): string {
  const fromQuery = new URLSearchParams(search).get("api");
  const base = fromQuery ?? globalBase ?? fallback;
  return base.replace(/\/+$/, "");
}

if (typeof document !== "undefined") {
  const root = document.getElementById("app");
  if (root) {
    const base = resolveBaseUrl(window.location.search, window.QORC_API_BASE);
    new App(root, new Client(base)).start();
  }
}
