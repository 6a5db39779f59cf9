// End-to-end flows against responses recorded from the real server over the
// bundled sample dataset. Asserts the interaction contract: slider bounds
// come from /api/meta, opening a cloud renders the server geometry verbatim,
// and a bin change issues exactly one sites request plus one cloud request
// per open cloud, applying the server's diff categories.

import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api";
import { App } from "../src/app";
import { currentBin } from "../src/state";
import type { AppConfig, CloudResponse, SitesResponse } from "../src/types";
import { FIXTURES, deferredFetch, fixtureFetch } from "./stub";

const TEST_CONFIG: AppConfig = {
  apiBase: "",
  tileUrl: "tiles/{z}/{x}/{y}.png",
  referenceZoom: 4,
  animationMs: 0,
  fullMarkers: 200,
  requestLimit: 400,
  maxTags: 20,
  cloudDisplayRadius: 0, // native: geometry must pass through untouched
  width: 800,
  height: 500,
};

const HOUSTON = { lat: 29.7, lon: -95.4 }; // zoom-4 transport coordinates
const DUKE = { lat: 36, lon: -78.9 };

function binOf(path: string): string | null {
  return new URL(path, "http://x").searchParams.get("bin");
}

function pathsOf(api: ApiClient, endpoint: string, bin?: string): string[] {
  return api.log.filter(
    (p) => p.startsWith(endpoint) && (bin === undefined || binOf(p) === bin),
  );
}

async function bootApp(): Promise<{ app: App; api: ApiClient; root: HTMLElement }> {
  const root = document.createElement("div");
  document.body.appendChild(root);
  const api = new ApiClient("", fixtureFetch());
  const app = new App(root, TEST_CONFIG, api);
  await app.start();
  return { app, api, root };
}

beforeEach(() => {
  document.body.innerHTML = "";
});

describe("boot", () => {
  it("slider bounds equal the dataset bins from /api/meta", async () => {
    const { app } = await bootApp();
    expect(app.slider.min).toBe("0");
    expect(app.slider.max).toBe(String(FIXTURES.meta.bins.length - 1));
    expect(app.state.bins).toEqual(FIXTURES.meta.bins);
    expect(currentBin(app.state)).toBe("2008");
  });

  it("renders one marker per returned site, in value order", async () => {
    const { app, root } = await bootApp();
    const sites2008 = FIXTURES.sites["2008"] as SitesResponse;
    const markers = root.querySelectorAll(".marker");
    expect(markers).toHaveLength(sites2008.lats.length);
    expect(app.sites[0].value).toBeGreaterThanOrEqual(app.sites[1].value);
  });
});

describe("opening a cloud", () => {
  it("renders exactly the geometry the server returned", async () => {
    const { app } = await bootApp();
    await app.toggleCloudAt(HOUSTON.lat, HOUSTON.lon);
    const fixture = FIXTURES.clouds["29.7,-95.4,2008"] as CloudResponse;
    const layout = fixture.layout!;
    const view = app.clouds.get("29.7,-95.4")!;
    expect(view).toBeDefined();
    expect(view.group.querySelector(".cloud-canvas")!.getAttribute("r")).toBe(
      String(layout.radius),
    );
    layout.placed.forEach((phrase, i) => {
      const el = view.tagElement(phrase)!;
      expect(el, phrase).toBeDefined();
      expect(el.getAttribute("transform")).toBe(`translate(${layout.x[i]},${layout.y[i]})`);
      expect(el.getAttribute("font-size")).toBe(String(layout.font[i]));
      expect(el.textContent).toBe(phrase);
    });
    expect(view.group.querySelectorAll("text")).toHaveLength(layout.placed.length);
    // the exact site key echoed by the server is used for later requests
    expect(view.siteLat).toBe(29.7174);
    expect(view.siteLon).toBe(-95.4018);
  });

  it("toggles closed on a second click", async () => {
    const { app } = await bootApp();
    await app.toggleCloudAt(HOUSTON.lat, HOUSTON.lon);
    expect(app.state.openClouds).toEqual(["29.7,-95.4"]);
    await app.toggleCloudAt(HOUSTON.lat, HOUSTON.lon);
    expect(app.state.openClouds).toEqual([]);
    expect(app.clouds.size).toBe(0);
  });
});

describe("changing the time bin", () => {
  it("issues one sites call plus one cloud call per open cloud", async () => {
    const { app, api } = await bootApp();
    await app.toggleCloudAt(HOUSTON.lat, HOUSTON.lon);
    await app.toggleCloudAt(DUKE.lat, DUKE.lon);
    const before = api.log.length;

    await app.changeBin(1);
    await app.pendingPrefetch;

    const delta = api.log.slice(before);
    expect(pathsOf(api, "/api/sites?", "2009")).toHaveLength(1);
    const cloudCalls = delta.filter((p) => p.startsWith("/api/cloud?"));
    expect(cloudCalls).toHaveLength(2);
    expect(cloudCalls.every((p) => binOf(p) === "2009")).toBe(true);
    // exact site keys, not the truncated marker coordinates
    expect(cloudCalls.some((p) => p.includes("lat=29.7174&lon=-95.4018"))).toBe(true);
    expect(cloudCalls.some((p) => p.includes("lat=36.0014&lon=-78.9382"))).toBe(true);
    // the animation window prefetches the adjacent bin's sites
    const prefetch = delta.filter((p) => p.startsWith("/api/sites?") && binOf(p) === "2010");
    expect(prefetch).toHaveLength(1);
    expect(delta).toHaveLength(4);
  });

  it("applies the server diff categories to the open cloud", async () => {
    const { app } = await bootApp();
    await app.toggleCloudAt(HOUSTON.lat, HOUSTON.lon);
    await app.changeBin(1);
    await app.pendingPrefetch;

    const fixture = FIXTURES.clouds["29.7174,-95.4018,2009"] as CloudResponse;
    const diff = fixture.diff!;
    const view = app.clouds.get("29.7,-95.4")!;
    const placed = new Set(fixture.layout!.placed);
    for (const phrase of diff.promoted) {
      if (!placed.has(phrase)) continue;
      expect(view.tagElement(phrase)!.getAttribute("class")).toBe("tag tag-promoted");
    }
    for (const phrase of diff.enter) {
      if (!placed.has(phrase)) continue;
      expect(view.tagElement(phrase)!.getAttribute("class")).toBe("tag tag-enter");
    }
    for (const phrase of diff.exit) {
      expect(view.tagElement(phrase)).toBeUndefined();
    }
    expect(diff.promoted.length).toBeGreaterThan(0);
    expect(diff.exit.length).toBeGreaterThan(0);

    // moving on demotes the recurring facility award phrases
    await app.changeBin(2);
    await app.pendingPrefetch;
    const fixture2010 = FIXTURES.clouds["29.7174,-95.4018,2010"] as CloudResponse;
    expect(fixture2010.diff!.demoted.length).toBeGreaterThan(0);
    for (const phrase of fixture2010.diff!.demoted) {
      if (!new Set(fixture2010.layout!.placed).has(phrase)) continue;
      expect(view.tagElement(phrase)!.getAttribute("class")).toBe("tag tag-demoted");
    }
  });

  it("updates the slider label and state", async () => {
    const { app } = await bootApp();
    await app.changeBin(2);
    expect(currentBin(app.state)).toBe("2010");
    expect(app.slider.value).toBe("2");
    expect(app.binLabel.textContent).toBe("2010");
  });

  it("prunes clouds for sites absent from the new bin", async () => {
    const { app } = await bootApp();
    await app.toggleCloudAt(DUKE.lat, DUKE.lon);
    await app.changeBin(2); // 2010 has only 3 sites; Duke is among them?
    const visible = new Set(app.sites.map((r) => `${r.lat},${r.lon}`));
    for (const key of app.state.openClouds) {
      expect(visible.has(key)).toBe(true);
    }
    expect(app.state.openClouds.length).toBe(app.clouds.size);
  });
});

describe("sparklines", () => {
  it("fetches per-tag series from /api/spark and overlays polylines", async () => {
    const { app, api } = await bootApp();
    await app.toggleCloudAt(HOUSTON.lat, HOUSTON.lon);
    const before = api.log.length;
    await app.toggleSparklines(true);
    const sparkCalls = api.log.slice(before).filter((p) => p.startsWith("/api/spark?"));
    const view = app.clouds.get("29.7,-95.4")!;
    expect(sparkCalls.length).toBe(view.phrases.length);
    expect(sparkCalls.every((p) => p.includes("lat=29.7174&lon=-95.4018"))).toBe(true);
    expect(view.group.querySelectorAll("polyline").length).toBeGreaterThan(0);
    await app.toggleSparklines(false);
    expect(view.group.querySelectorAll("polyline")).toHaveLength(0);
  });
});

describe("stale responses", () => {
  it("a slower superseded sites response is discarded", async () => {
    const root = document.createElement("div");
    document.body.appendChild(root);
    const { fetchFn, pending } = deferredFetch();
    const api = new ApiClient("", fetchFn);
    const app = new App(root, TEST_CONFIG, api);
    const started = app.start();
    // meta is requested synchronously; the initial sites fetch follows
    // only once meta resolves
    pending[0].release();
    while (pending.length < 2) await Promise.resolve();
    pending[1].release();
    await started;

    const first = app.changeBin(1); // sites bin=2009 pending
    const second = app.changeBin(2); // sites bin=2010 pending
    const p2009 = pending.find((p) => binOf(p.url) === "2009")!;
    const p2010 = pending.find((p) => binOf(p.url) === "2010")!;
    p2010.release();
    await second;
    p2009.release(); // resolves late: must not clobber the newer state
    await first;
    for (const p of pending) p.release(); // drain prefetches

    expect(currentBin(app.state)).toBe("2010");
    const sites2010 = FIXTURES.sites["2010"] as SitesResponse;
    expect(app.sites).toHaveLength(sites2010.lats.length);
  });
});
