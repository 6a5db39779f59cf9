import { describe, expect, it } from "vitest";

import { ApiClient, RequestGate, type FetchLike } from "../src/api";

function recording(bodies: Record<string, unknown> = {}): { fetchFn: FetchLike; urls: string[] } {
  const urls: string[] = [];
  const fetchFn: FetchLike = (url) => {
    urls.push(url);
    return Promise.resolve({ ok: true, status: 200, json: () => Promise.resolve(bodies[url] ?? {}) });
  };
  return { fetchFn, urls };
}

describe("api client", () => {
  it("builds canonical urls and logs every request", async () => {
    const { fetchFn, urls } = recording();
    const api = new ApiClient("http://h:1", fetchFn);
    await api.meta();
    await api.sites({ west: -180, south: -90, east: 180, north: 90 }, "2008", 4, 400);
    await api.cloud(29.7, -95.4, "2008", 20, 4);
    await api.spark(29.7174, -95.4018, "space plasma observatory facility");
    expect(urls).toEqual([
      "http://h:1/api/meta",
      "http://h:1/api/sites?bbox=-180.0000,-90.0000,180.0000,90.0000&bin=2008&zoom=4&limit=400",
      "http://h:1/api/cloud?lat=29.7&lon=-95.4&bin=2008&max_tags=20&layout=1&zoom=4",
      "http://h:1/api/spark?lat=29.7174&lon=-95.4018&phrase=space%20plasma%20observatory%20facility",
    ]);
    expect(api.log).toHaveLength(4);
    expect(api.log[0]).toBe("/api/meta");
  });

  it("throws on http errors", async () => {
    const api = new ApiClient("", () =>
      Promise.resolve({ ok: false, status: 404, json: () => Promise.resolve({}) }),
    );
    await expect(api.meta()).rejects.toThrow("404");
  });
});

describe("request gate", () => {
  it("only the newest token is current", () => {
    const gate = new RequestGate();
    const a = gate.issue();
    const b = gate.issue();
    expect(gate.isCurrent(a)).toBe(false);
    expect(gate.isCurrent(b)).toBe(true);
  });
});
