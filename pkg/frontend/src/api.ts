// Typed client for the dataset API. Every request URL is appended to `log`
// so tests (and debugging) can assert exactly what the UI asked for.
// Concurrent refreshes use sequence tokens: only the newest request of a
// kind may apply its response, so slow stale responses are discarded.

import type { CloudResponse, MetaResponse, SitesResponse, SparkResponse } from "./types";

export type FetchLike = (url: string) => Promise<{ ok: boolean; status: number; json(): Promise<unknown> }>;

export interface BBox {
  west: number;
  south: number;
  east: number;
  north: number;
}

export class ApiClient {
  readonly log: string[] = [];

  constructor(
    private base: string,
    private fetchFn: FetchLike = (url) => fetch(url),
  ) {}

  private async get<T>(path: string): Promise<T> {
    const url = this.base + path;
    this.log.push(path);
    const resp = await this.fetchFn(url);
    if (!resp.ok) {
      throw new Error(`GET ${path} failed with status ${resp.status}`);
    }
    return (await resp.json()) as T;
  }

  meta(): Promise<MetaResponse> {
    return this.get("/api/meta");
  }

  sites(bbox: BBox, bin: string, zoom: number, limit: number): Promise<SitesResponse> {
    const bboxParam = [bbox.west, bbox.south, bbox.east, bbox.north]
      .map((v) => v.toFixed(4))
      .join(",");
    return this.get(
      `/api/sites?bbox=${bboxParam}&bin=${encodeURIComponent(bin)}&zoom=${zoom}&limit=${limit}`,
    );
  }

  cloud(lat: number, lon: number, bin: string, maxTags: number, zoom: number): Promise<CloudResponse> {
    return this.get(
      `/api/cloud?lat=${lat}&lon=${lon}&bin=${encodeURIComponent(bin)}` +
        `&max_tags=${maxTags}&layout=1&zoom=${zoom}`,
    );
  }

  spark(lat: number, lon: number, phrase: string): Promise<SparkResponse> {
    return this.get(`/api/spark?lat=${lat}&lon=${lon}&phrase=${encodeURIComponent(phrase)}`);
  }
}

/** Monotone sequence tokens for latest-wins request handling. */
export class RequestGate {
  private seq = 0;

  issue(): number {
    return ++this.seq;
  }

  isCurrent(token: number): boolean {
    return token === this.seq;
  }
}
