// Web Mercator math for slippy z/x/y tiles (256px tiles).

export const TILE_SIZE = 256;
export const MAX_LAT = 85.05112878;

export function worldSize(zoom: number): number {
  return TILE_SIZE * 2 ** zoom;
}

export function clampLat(lat: number): number {
  return Math.max(-MAX_LAT, Math.min(MAX_LAT, lat));
}

/** Longitude to world pixel x at a zoom level. */
export function lonToX(lon: number, zoom: number): number {
  return ((lon + 180) / 360) * worldSize(zoom);
}

/** Latitude to world pixel y (0 at the north edge). */
export function latToY(lat: number, zoom: number): number {
  const rad = (clampLat(lat) * Math.PI) / 180;
  const merc = Math.log(Math.tan(Math.PI / 4 + rad / 2));
  return ((1 - merc / Math.PI) / 2) * worldSize(zoom);
}

export function xToLon(x: number, zoom: number): number {
  return (x / worldSize(zoom)) * 360 - 180;
}

export function yToLat(y: number, zoom: number): number {
  const merc = (1 - (2 * y) / worldSize(zoom)) * Math.PI;
  return ((2 * Math.atan(Math.exp(merc)) - Math.PI / 2) * 180) / Math.PI;
}

/** Wrap a longitude into [-180, 180). */
export function wrapLon(lon: number): number {
  return ((((lon + 180) % 360) + 360) % 360) - 180;
}
