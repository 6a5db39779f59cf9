// Shapes of the backend's columnar JSON responses.

export interface MetaResponse {
  bins: string[];
  fingerprint: string;
  granularity: string;
  records_read: number;
  records_kept: number;
  site_count: number;
  presets: string[];
  [key: string]: unknown;
}

export interface SitesResponse {
  bin: string;
  p: number; // coordinate decimals; lats/lons are integers at 10^-p degrees
  lats: number[];
  lons: number[];
  values: number[];
  counts: number[];
}

export interface CloudLayoutData {
  radius: number;
  placed: string[];
  x: number[];
  y: number[];
  w: number[];
  h: number[];
  font: number[];
  dropped: string[];
}

export interface CloudDiffData {
  enter: string[];
  exit: string[];
  promoted: string[];
  demoted: string[];
  steady: string[];
}

export interface CloudResponse {
  bin: string;
  lat: number; // exact site key echoed by the server
  lon: number;
  phrases: string[];
  weights: number[];
  layout?: CloudLayoutData;
  diff?: CloudDiffData;
}

export interface SparkResponse {
  phrase: string;
  bins: string[];
  values: number[];
}

export interface SiteRow {
  lat: number;
  lon: number;
  value: number;
  count: number;
}

export interface AppConfig {
  apiBase: string;
  tileUrl: string;
  referenceZoom: number;
  animationMs: number;
  fullMarkers: number; // sites ranked beyond this render as one-pixel dots
  requestLimit: number;
  maxTags: number;
  cloudDisplayRadius: number; // 0 = render at the server's native radius
  width: number;
  height: number;
}

export const DEFAULT_CONFIG: AppConfig = {
  apiBase: "http://127.0.0.1:8000",
  tileUrl: "https://tile.openstreetmap.org/{z}/{x}/{y}.png",
  referenceZoom: 4,
  animationMs: 400,
  fullMarkers: 200,
  requestLimit: 400,
  maxTags: 20,
  cloudDisplayRadius: 140,
  width: 960,
  height: 600,
};
