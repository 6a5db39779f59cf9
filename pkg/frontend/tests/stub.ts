// Fetch stub backed by responses recorded from the real server over the
// bundled sample dataset (scripts/make_fixtures.py regenerates them).

import fixtures from "./fixtures/nsf.json";
import type { FetchLike } from "../src/api";

export const FIXTURES = fixtures as unknown as {
  meta: { bins: string[]; [k: string]: unknown };
  sites: Record<string, unknown>;
  clouds: Record<string, unknown>;
  sparks: Record<string, unknown>;
};

function route(url: string): unknown | null {
  const parsed = new URL(url, "http://fixtures.local");
  const params = parsed.searchParams;
  switch (parsed.pathname) {
    case "/api/meta":
      return FIXTURES.meta;
    case "/api/sites":
      return FIXTURES.sites[params.get("bin") ?? ""] ?? null;
    case "/api/cloud":
      return FIXTURES.clouds[`${params.get("lat")},${params.get("lon")},${params.get("bin")}`] ?? null;
    case "/api/spark":
      return (
        FIXTURES.sparks[`${params.get("lat")},${params.get("lon")},${params.get("phrase")}`] ?? null
      );
    default:
      return null;
  }
}

export function fixtureFetch(): FetchLike {
  return (url: string) => {
    const body = route(url);
    if (body === null) {
      return Promise.resolve({
        ok: false,
        status: 404,
        json: () => Promise.reject(new Error("no fixture")),
      });
    }
    return Promise.resolve({ ok: true, status: 200, json: () => Promise.resolve(body) });
  };
}

/** A stub whose responses resolve only when the test releases them. */
export function deferredFetch(): {
  fetchFn: FetchLike;
  pending: { url: string; release: () => void }[];
} {
  const pending: { url: string; release: () => void }[] = [];
  const fetchFn: FetchLike = (url: string) =>
    new Promise((resolve) => {
      pending.push({
        url,
        release: () => {
          const body = route(url);
          resolve({ ok: body !== null, status: body === null ? 404 : 200, json: () => Promise.resolve(body) });
        },
      });
    });
  return { fetchFn, pending };
}
