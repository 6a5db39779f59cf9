// Minimal slippy map: a pannable/zoomable grid of raster tiles from any
// z/x/y URL template, plus an SVG overlay that pans with it. The size is
// explicit (no layout measurement), which keeps behavior identical in
// DOM-only test environments.

import { TILE_SIZE, latToY, lonToX, wrapLon, worldSize, xToLon, yToLat } from "./mercator";
import type { BBox } from "./api";

export interface TileMapOptions {
  width: number;
  height: number;
  tileUrl: string;
  lat: number;
  lon: number;
  zoom: number;
  minZoom?: number;
  maxZoom?: number;
}

export class TileMap {
  readonly viewport: HTMLDivElement;
  readonly overlay: SVGSVGElement;
  lat: number;
  lon: number;
  zoom: number;
  onMoveEnd: (() => void) | null = null;

  private tilesEl: HTMLDivElement;
  private width: number;
  private height: number;
  private tileUrl: string;
  private minZoom: number;
  private maxZoom: number;
  private dragging: { x: number; y: number } | null = null;

  constructor(container: HTMLElement, opts: TileMapOptions) {
    const doc = container.ownerDocument;
    this.width = opts.width;
    this.height = opts.height;
    this.tileUrl = opts.tileUrl;
    this.lat = opts.lat;
    this.lon = opts.lon;
    this.zoom = opts.zoom;
    this.minZoom = opts.minZoom ?? 1;
    this.maxZoom = opts.maxZoom ?? 19;

    this.viewport = doc.createElement("div");
    this.viewport.className = "map-viewport";
    this.viewport.style.width = `${this.width}px`;
    this.viewport.style.height = `${this.height}px`;
    this.tilesEl = doc.createElement("div");
    this.tilesEl.className = "map-tiles";
    this.overlay = doc.createElementNS("http://www.w3.org/2000/svg", "svg") as SVGSVGElement;
    this.overlay.setAttribute("class", "map-overlay");
    this.overlay.setAttribute("width", String(this.width));
    this.overlay.setAttribute("height", String(this.height));
    this.viewport.appendChild(this.tilesEl);
    this.viewport.appendChild(this.overlay);
    container.appendChild(this.viewport);

    this.viewport.addEventListener("pointerdown", (e) => {
      this.dragging = { x: (e as PointerEvent).clientX, y: (e as PointerEvent).clientY };
    });
    this.viewport.addEventListener("pointermove", (e) => {
      if (!this.dragging) return;
      const pe = e as PointerEvent;
      this.panBy(this.dragging.x - pe.clientX, this.dragging.y - pe.clientY, false);
      this.dragging = { x: pe.clientX, y: pe.clientY };
    });
    const stop = () => {
      if (this.dragging) {
        this.dragging = null;
        this.onMoveEnd?.();
      }
    };
    this.viewport.addEventListener("pointerup", stop);
    this.viewport.addEventListener("pointerleave", stop);
    this.viewport.addEventListener("wheel", (e) => {
      e.preventDefault();
      this.zoomBy((e as WheelEvent).deltaY < 0 ? 1 : -1);
    });

    this.renderTiles();
  }

  /** Viewport pixel position of a coordinate. */
  project(lat: number, lon: number): [number, number] {
    const cx = lonToX(this.lon, this.zoom);
    const cy = latToY(this.lat, this.zoom);
    let dx = lonToX(lon, this.zoom) - cx;
    const world = worldSize(this.zoom);
    // take the shorter way around the antimeridian
    if (dx > world / 2) dx -= world;
    if (dx < -world / 2) dx += world;
    return [this.width / 2 + dx, this.height / 2 + (latToY(lat, this.zoom) - cy)];
  }

  bbox(): BBox {
    const world = worldSize(this.zoom);
    const cy = latToY(this.lat, this.zoom);
    const north = yToLat(Math.max(0, cy - this.height / 2), this.zoom);
    const south = yToLat(Math.min(world, cy + this.height / 2), this.zoom);
    if (this.width >= world) {
      return { west: -180, south, east: 180, north };
    }
    const cx = lonToX(this.lon, this.zoom);
    const west = wrapLon(xToLon(cx - this.width / 2, this.zoom));
    const east = wrapLon(xToLon(cx + this.width / 2, this.zoom));
    return { west, south, east, north };
  }

  setView(lat: number, lon: number, zoom: number): void {
    this.lat = lat;
    this.lon = wrapLon(lon);
    this.zoom = Math.max(this.minZoom, Math.min(this.maxZoom, Math.round(zoom)));
    this.renderTiles();
    this.onMoveEnd?.();
  }

  panBy(dx: number, dy: number, fireMoveEnd = true): void {
    const cx = lonToX(this.lon, this.zoom) + dx;
    const cy = latToY(this.lat, this.zoom) + dy;
    const world = worldSize(this.zoom);
    this.lon = wrapLon(xToLon(((cx % world) + world) % world, this.zoom));
    this.lat = yToLat(Math.max(0, Math.min(world, cy)), this.zoom);
    this.renderTiles();
    if (fireMoveEnd) this.onMoveEnd?.();
  }

  zoomBy(delta: number): void {
    const next = Math.max(this.minZoom, Math.min(this.maxZoom, this.zoom + delta));
    if (next !== this.zoom) {
      this.zoom = next;
      this.renderTiles();
      this.onMoveEnd?.();
    }
  }

  private renderTiles(): void {
    const doc = this.viewport.ownerDocument;
    this.tilesEl.textContent = "";
    const tiles = 2 ** this.zoom;
    const cx = lonToX(this.lon, this.zoom);
    const cy = latToY(this.lat, this.zoom);
    const left = cx - this.width / 2;
    const top = cy - this.height / 2;
    const x0 = Math.floor(left / TILE_SIZE);
    const y0 = Math.floor(top / TILE_SIZE);
    const x1 = Math.floor((left + this.width) / TILE_SIZE);
    const y1 = Math.floor((top + this.height) / TILE_SIZE);
    for (let ty = Math.max(0, y0); ty <= Math.min(tiles - 1, y1); ty++) {
      for (let tx = x0; tx <= x1; tx++) {
        const wrapped = ((tx % tiles) + tiles) % tiles;
        const img = doc.createElement("img");
        img.className = "map-tile";
        img.width = TILE_SIZE;
        img.height = TILE_SIZE;
        img.style.left = `${tx * TILE_SIZE - left}px`;
        img.style.top = `${ty * TILE_SIZE - top}px`;
        img.src = this.tileUrl
          .replace("{z}", String(this.zoom))
          .replace("{x}", String(wrapped))
          .replace("{y}", String(ty));
        this.tilesEl.appendChild(img);
      }
    }
  }
}
