import { describe, expect, it } from "vitest";

import {
  MAX_LAT,
  TILE_SIZE,
  latToY,
  lonToX,
  worldSize,
  wrapLon,
  xToLon,
  yToLat,
} from "../src/mercator";

describe("web mercator", () => {
  it("maps the origin to the world center", () => {
    for (const zoom of [0, 4, 10]) {
      expect(lonToX(0, zoom)).toBeCloseTo(worldSize(zoom) / 2, 6);
      expect(latToY(0, zoom)).toBeCloseTo(worldSize(zoom) / 2, 6);
    }
  });

  it("maps the edges of the world", () => {
    expect(lonToX(-180, 3)).toBe(0);
    expect(lonToX(180, 3)).toBe(worldSize(3));
    expect(latToY(MAX_LAT, 3)).toBeCloseTo(0, 5);
    expect(latToY(-MAX_LAT, 3)).toBeCloseTo(worldSize(3), 5);
  });

  it("round-trips coordinates", () => {
    for (const [lat, lon] of [
      [47.6062, -122.3321],
      [29.7174, -95.4018],
      [-33.8688, 151.2093],
      [0.01, 0.01],
    ]) {
      for (const zoom of [2, 4, 12]) {
        expect(xToLon(lonToX(lon, zoom), zoom)).toBeCloseTo(lon, 9);
        expect(yToLat(latToY(lat, zoom), zoom)).toBeCloseTo(lat, 9);
      }
    }
  });

  it("doubles pixel coordinates per zoom level", () => {
    expect(lonToX(-96, 5)).toBeCloseTo(2 * lonToX(-96, 4), 9);
    expect(latToY(39, 5)).toBeCloseTo(2 * latToY(39, 4), 9);
  });

  it("wraps longitudes", () => {
    expect(wrapLon(190)).toBe(-170);
    expect(wrapLon(-190)).toBe(170);
    expect(wrapLon(180)).toBe(-180);
    expect(wrapLon(45)).toBe(45);
  });

  it("uses 256px tiles", () => {
    expect(worldSize(0)).toBe(TILE_SIZE);
  });
});
