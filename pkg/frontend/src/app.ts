// Orchestration: the map with proportional markers, the time slider, and
// click-to-expand animated tag clouds. The app is a thin conductor between
// the HTTP API and the DOM; every weight, radius schedule, cloud geometry,
// and diff category is a server value rendered as-is.

import { ApiClient, RequestGate } from "./api";
import { CloudView } from "./cloud";
import { HIT_RADIUS, decodeSites, sizeMarkers } from "./markers";
import {
  ViewState,
  currentBin,
  initialState,
  openCloud,
  closeCloud,
  prefetchIndex,
  pruneClouds,
  siteKey,
  withBin,
} from "./state";
import { TileMap } from "./tilemap";
import { SVG_NS } from "./cloud";
import type { AppConfig, SiteRow, SitesResponse } from "./types";

export class App {
  state: ViewState = initialState([]);
  map: TileMap;
  slider: HTMLInputElement;
  binLabel: HTMLSpanElement;
  sparkToggle: HTMLInputElement;
  sites: SiteRow[] = [];
  readonly clouds = new Map<string, CloudView>();
  /** Resolves when the latest prefetch (if any) settles; for tests. */
  pendingPrefetch: Promise<void> = Promise.resolve();

  private markersGroup: SVGGElement;
  private cloudsGroup: SVGGElement;
  private sitesGate = new RequestGate();

  constructor(
    root: HTMLElement,
    readonly config: AppConfig,
    readonly api: ApiClient,
  ) {
    const doc = root.ownerDocument;
    const bar = doc.createElement("div");
    bar.className = "toolbar";
    this.slider = doc.createElement("input");
    this.slider.type = "range";
    this.slider.className = "bin-slider";
    this.slider.addEventListener("input", () => {
      void this.changeBin(Number(this.slider.value));
    });
    this.binLabel = doc.createElement("span");
    this.binLabel.className = "bin-label";
    this.sparkToggle = doc.createElement("input");
    this.sparkToggle.type = "checkbox";
    this.sparkToggle.className = "spark-toggle";
    this.sparkToggle.addEventListener("change", () => {
      void this.toggleSparklines(this.sparkToggle.checked);
    });
    const sparkLabel = doc.createElement("label");
    sparkLabel.appendChild(this.sparkToggle);
    sparkLabel.appendChild(doc.createTextNode(" sparklines"));
    bar.appendChild(this.slider);
    bar.appendChild(this.binLabel);
    bar.appendChild(sparkLabel);
    root.appendChild(bar);

    this.map = new TileMap(root, {
      width: config.width,
      height: config.height,
      tileUrl: config.tileUrl,
      lat: 39.0,
      lon: -96.0,
      zoom: config.referenceZoom,
    });
    this.markersGroup = doc.createElementNS(SVG_NS, "g") as SVGGElement;
    this.markersGroup.setAttribute("class", "markers");
    this.cloudsGroup = doc.createElementNS(SVG_NS, "g") as SVGGElement;
    this.cloudsGroup.setAttribute("class", "clouds");
    this.map.overlay.appendChild(this.markersGroup);
    this.map.overlay.appendChild(this.cloudsGroup);
    this.map.onMoveEnd = () => {
      void this.refreshSites();
    };
  }

  async start(): Promise<void> {
    const meta = await this.api.meta();
    this.state = initialState(meta.bins);
    this.slider.min = "0";
    this.slider.max = String(Math.max(0, meta.bins.length - 1));
    this.slider.value = "0";
    this.binLabel.textContent = currentBin(this.state) ?? "";
    await this.refreshSites();
  }

  /** Viewport changed: fetch the viewport's sites (latest request wins). */
  async refreshSites(): Promise<void> {
    if (!this.state.bins.length) return;
    const token = this.sitesGate.issue();
    const resp = await this.api.sites(
      this.map.bbox(),
      currentBin(this.state),
      this.map.zoom,
      this.config.requestLimit,
    );
    if (!this.sitesGate.isCurrent(token)) return; // stale response: discard
    this.applySites(resp);
  }

  private applySites(resp: SitesResponse): void {
    this.sites = decodeSites(resp);
    const visible = new Set(this.sites.map((r) => siteKey(r.lat, r.lon)));
    const pruned = pruneClouds(this.state, visible);
    for (const key of this.state.openClouds) {
      if (!pruned.openClouds.includes(key)) this.removeCloudView(key);
    }
    this.state = pruned;
    this.renderMarkers();
    this.positionClouds();
  }

  private renderMarkers(): void {
    const doc = this.markersGroup.ownerDocument!;
    this.markersGroup.textContent = "";
    const sized = sizeMarkers(
      this.sites,
      this.map.zoom,
      this.config.referenceZoom,
      this.config.fullMarkers,
    );
    for (const marker of sized) {
      const key = siteKey(marker.lat, marker.lon);
      const [px, py] = this.map.project(marker.lat, marker.lon);
      const group = doc.createElementNS(SVG_NS, "g") as SVGGElement;
      group.setAttribute("class", marker.dot ? "marker marker-dot" : "marker");
      group.setAttribute("data-key", key);
      group.setAttribute("transform", `translate(${px},${py})`);
      const circle = doc.createElementNS(SVG_NS, "circle");
      circle.setAttribute("class", "marker-shape");
      circle.setAttribute("r", String(marker.radius));
      group.appendChild(circle);
      const hit = doc.createElementNS(SVG_NS, "circle");
      hit.setAttribute("class", "marker-hit");
      hit.setAttribute("r", String(Math.max(marker.radius, HIT_RADIUS)));
      group.appendChild(hit);
      group.addEventListener("click", () => {
        void this.toggleCloudAt(marker.lat, marker.lon);
      });
      this.markersGroup.appendChild(group);
    }
  }

  private positionClouds(): void {
    for (const [key, view] of this.clouds) {
      const row = this.sites.find((r) => siteKey(r.lat, r.lon) === key);
      if (!row) continue;
      const [px, py] = this.map.project(row.lat, row.lon);
      view.group.setAttribute("transform", `translate(${px},${py})`);
    }
  }

  async toggleCloudAt(lat: number, lon: number): Promise<void> {
    const key = siteKey(lat, lon);
    if (this.clouds.has(key)) {
      this.removeCloudView(key);
      this.state = closeCloud(this.state, key);
      return;
    }
    const resp = await this.api.cloud(
      lat,
      lon,
      currentBin(this.state),
      this.config.maxTags,
      this.map.zoom,
    );
    const view = new CloudView(this.map.overlay.ownerDocument!, this.config.cloudDisplayRadius);
    view.render(resp);
    this.clouds.set(key, view);
    this.cloudsGroup.appendChild(view.group);
    this.state = openCloud(this.state, key);
    this.positionClouds();
    if (this.state.sparklines) await this.loadSparklines(view);
  }

  private removeCloudView(key: string): void {
    const view = this.clouds.get(key);
    if (view) {
      view.group.remove();
      this.clouds.delete(key);
    }
  }

  /**
   * Select another time bin: exactly one sites request for the new bin plus
   * one cloud request per open cloud, then a prefetch of the adjacent bin
   * while the transition animates.
   */
  async changeBin(index: number): Promise<void> {
    const previous = this.state.binIndex;
    if (index === previous || !this.state.bins.length) return;
    this.state = { ...withBin(this.state, index), animating: true };
    const bin = currentBin(this.state);
    this.slider.value = String(this.state.binIndex);
    this.binLabel.textContent = bin;

    const token = this.sitesGate.issue();
    const sitesPromise = this.api.sites(
      this.map.bbox(),
      bin,
      this.map.zoom,
      this.config.requestLimit,
    );
    const cloudUpdates = [...this.clouds.entries()].map(async ([key, view]) => {
      const resp = await this.api.cloud(
        view.siteLat,
        view.siteLon,
        bin,
        this.config.maxTags,
        this.map.zoom,
      );
      if (this.clouds.get(key) === view) view.update(resp, this.config.animationMs);
    });

    const sitesResp = await sitesPromise;
    if (this.sitesGate.isCurrent(token)) this.applySites(sitesResp);
    await Promise.all(cloudUpdates);

    // use the animation window to warm the cache for the likely next step
    const ahead = prefetchIndex(this.state, previous);
    if (ahead !== null) {
      this.pendingPrefetch = this.api
        .sites(this.map.bbox(), this.state.bins[ahead], this.map.zoom, this.config.requestLimit)
        .then(() => undefined)
        .catch(() => undefined);
    }
    const settle = () => {
      this.state = { ...this.state, animating: false };
    };
    if (this.config.animationMs > 0) {
      setTimeout(settle, this.config.animationMs);
    } else {
      settle();
    }
  }

  async toggleSparklines(on: boolean): Promise<void> {
    this.state = { ...this.state, sparklines: on };
    for (const view of this.clouds.values()) {
      if (on) {
        await this.loadSparklines(view);
      } else {
        view.toggleSparklines(false);
      }
    }
  }

  private async loadSparklines(view: CloudView): Promise<void> {
    const series = await Promise.all(
      view.phrases.map((phrase) => this.api.spark(view.siteLat, view.siteLon, phrase)),
    );
    view.setSparkData(series);
    view.toggleSparklines(true);
  }
}
