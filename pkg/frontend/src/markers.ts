// Marker sizing mirrors the server's math: log-scale radius from the site
// value, magnified at half the map's rate so occluded markers separate as
// the user zooms in. The UI never invents weights; values come straight
// from the sites response.

import type { SiteRow, SitesResponse } from "./types";

export const MARKER_MIN = 4;
export const MARKER_MAX = 24;
export const DOT_RADIUS = 0.5;
export const HIT_RADIUS = 4; // >= 8px diameter hit area, dots included

export function markerRadius(
  value: number,
  vMin: number,
  vMax: number,
  rMin: number = MARKER_MIN,
  rMax: number = MARKER_MAX,
): number {
  if (value <= 0 || vMin <= 0) throw new Error("marker values must be positive");
  if (vMin === vMax) return (rMin + rMax) / 2;
  const frac = (Math.log(value) - Math.log(vMin)) / (Math.log(vMax) - Math.log(vMin));
  return rMin + (rMax - rMin) * frac;
}

export function markerZoomScale(zoom: number, referenceZoom: number): number {
  return 2 ** ((zoom - referenceZoom) / 2);
}

/** Decode the columnar sites response into rows (value order preserved). */
export function decodeSites(resp: SitesResponse): SiteRow[] {
  const scale = 10 ** resp.p;
  return resp.lats.map((lat, i) => ({
    lat: lat / scale,
    lon: resp.lons[i] / scale,
    value: resp.values[i],
    count: resp.counts[i],
  }));
}

export interface SizedMarker extends SiteRow {
  radius: number; // pixels; DOT_RADIUS for demoted sites
  dot: boolean;
}

/** Size all markers of one response; rows past `fullMarkers` become dots. */
export function sizeMarkers(
  rows: SiteRow[],
  zoom: number,
  referenceZoom: number,
  fullMarkers: number,
): SizedMarker[] {
  const positives = rows.filter((r) => r.value > 0);
  const vMin = positives.length ? Math.min(...positives.map((r) => r.value)) : 1;
  const vMax = positives.length ? Math.max(...positives.map((r) => r.value)) : 1;
  const scale = markerZoomScale(zoom, referenceZoom);
  return rows.map((row, rank) => {
    if (rank >= fullMarkers || row.value <= 0) {
      return { ...row, radius: DOT_RADIUS, dot: true };
    }
    return { ...row, radius: markerRadius(row.value, vMin, vMax) * scale, dot: false };
  });
}
