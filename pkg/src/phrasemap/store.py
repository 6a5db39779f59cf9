"""Dataset persistence and query: viewport top-K, clouds, sparklines.

A dataset is a versioned directory of sorted TSV tables plus a JSON
manifest, written deterministically (no timestamps, canonical sort) so
equal aggregates produce byte-identical directories. Readers build an
in-memory index; datasets are immutable once written and swaps happen by
directory rename.
"""
from __future__ import annotations

import json
import os
import shutil
from bisect import bisect_left, bisect_right
from pathlib import Path

from .coords import (
    fmt_coord,
    fmt_units,
    parse_units,
    round_half_away,
    units_to_value,
    zoom_decimals,
)

FORMAT_VERSION = 1

MANIFEST_FILE = "manifest.json"
TRIPLES_FILE = "triples.tsv"
SUMMARIES_FILE = "summaries.tsv"


class DatasetError(ValueError):
    """Missing or malformed dataset directory."""


def quantize(lat: float, lon: float, zoom: int) -> tuple[float, float]:
    """Zoom-dependent coordinate truncation; identity on site keys at p=4."""
    p = zoom_decimals(zoom)
    return round_half_away(lat, p), round_half_away(lon, p)


def write_dataset(
    path,
    *,
    config: dict,
    fingerprint: str,
    triples: dict,
    summaries: dict,
    skips: dict,
    records_read: int,
) -> dict:
    """Write a dataset directory atomically; returns the manifest dict.

    An existing directory at `path` is replaced by rename so concurrent
    readers only ever see a complete dataset.
    """
    path = Path(path)
    bins = sorted({key[2] for key in summaries})
    sites = {(key[0], key[1]) for key in summaries}
    manifest = {
        "format_version": FORMAT_VERSION,
        "fingerprint": fingerprint,
        "granularity": config["granularity"],
        "bins": bins,
        "records_read": records_read,
        "records_kept": records_read - sum(skips.values()),
        "skipped": {reason: skips[reason] for reason in sorted(skips)},
        "triple_count": len(triples),
        "summary_count": len(summaries),
        "site_count": len(sites),
        "config": config,
    }

    tmp = path.with_name(path.name + f".tmp-{os.getpid()}")
    if tmp.exists():
        shutil.rmtree(tmp)
    tmp.mkdir(parents=True)
    with open(tmp / MANIFEST_FILE, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(manifest, fh, sort_keys=True, indent=2)
        fh.write("\n")
    with open(tmp / SUMMARIES_FILE, "w", encoding="utf-8", newline="\n") as fh:
        for (qlat, qlon, bin_label), (units, count) in sorted(summaries.items()):
            fh.write(
                f"{fmt_coord(qlat)}\t{fmt_coord(qlon)}\t{bin_label}\t{fmt_units(units)}\t{count}\n"
            )
    with open(tmp / TRIPLES_FILE, "w", encoding="utf-8", newline="\n") as fh:
        ordered = sorted(triples.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2], -kv[1], kv[0][3]))
        for (qlat, qlon, bin_label, phrase), units in ordered:
            fh.write(
                f"{fmt_coord(qlat)}\t{fmt_coord(qlon)}\t{bin_label}\t{phrase}\t{fmt_units(units)}\n"
            )

    if path.exists():
        old = path.with_name(path.name + ".old")
        if old.exists():
            shutil.rmtree(old)
        os.rename(path, old)
        os.rename(tmp, path)
        shutil.rmtree(old)
    else:
        os.rename(tmp, path)
    return manifest


def read_manifest(path) -> dict:
    path = Path(path)
    manifest_path = path / MANIFEST_FILE
    if not manifest_path.exists():
        raise DatasetError(f"{path} is not a dataset directory (no {MANIFEST_FILE})")
    with open(manifest_path, encoding="utf-8") as fh:
        manifest = json.load(fh)
    if manifest.get("format_version") != FORMAT_VERSION:
        raise DatasetError(
            f"{path}: unsupported format version {manifest.get('format_version')!r}"
        )
    return manifest


def read_tables(path) -> tuple[dict, dict, dict]:
    """Exact integer-unit tables for merging: (manifest, triples, summaries)."""
    path = Path(path)
    manifest = read_manifest(path)
    triples = {}
    with open(path / TRIPLES_FILE, encoding="utf-8") as fh:
        for line in fh:
            lat, lon, bin_label, phrase, units = line.rstrip("\n").split("\t")
            triples[(float(lat), float(lon), bin_label, phrase)] = parse_units(units)
    summaries = {}
    with open(path / SUMMARIES_FILE, encoding="utf-8") as fh:
        for line in fh:
            lat, lon, bin_label, units, count = line.rstrip("\n").split("\t")
            summaries[(float(lat), float(lon), bin_label)] = [parse_units(units), int(count)]
    return manifest, triples, summaries


class Dataset:
    """In-memory query index over a dataset directory."""

    def __init__(self, manifest: dict, triples: dict, summaries: dict):
        self.manifest = manifest
        self.fingerprint = manifest["fingerprint"]
        self.granularity = manifest["granularity"]
        self.bins: list[str] = list(manifest["bins"])

        # Per-bin rows sorted by (qlat, qlon), with a parallel qlat list
        # for bisecting the latitude band of a bbox.
        self._rows: dict[str, list[tuple[float, float, float, int]]] = {}
        self._lat_index: dict[str, list[float]] = {}
        by_bin: dict[str, list] = {}
        for (qlat, qlon, bin_label), (units, count) in summaries.items():
            by_bin.setdefault(bin_label, []).append((qlat, qlon, units_to_value(units), count))
        for bin_label, rows in by_bin.items():
            rows.sort(key=lambda r: (r[0], r[1]))
            self._rows[bin_label] = rows
            self._lat_index[bin_label] = [r[0] for r in rows]

        self._clouds: dict[tuple[float, float, str], list[tuple[str, float]]] = {}
        for (qlat, qlon, bin_label, phrase), units in triples.items():
            self._clouds.setdefault((qlat, qlon, bin_label), []).append(
                (phrase, units_to_value(units))
            )
        for tags in self._clouds.values():
            tags.sort(key=lambda t: (-t[1], t[0]))
        self._sites = {(k[0], k[1]) for k in summaries}
        self._values = {key: units_to_value(entry[0]) for key, entry in summaries.items()}

    @classmethod
    def load(cls, path) -> "Dataset":
        manifest, triples, summaries = read_tables(path)
        return cls(manifest, triples, summaries)

    def has_site(self, qlat: float, qlon: float) -> bool:
        return (qlat, qlon) in self._sites

    def locate_site(
        self, lat: float, lon: float, zoom: int = 21, bin_label: str | None = None
    ) -> tuple[float, float] | None:
        """Find the site a (possibly zoom-truncated) coordinate refers to.

        Exact site keys match directly. Otherwise the coordinate is matched
        against sites truncated at the zoom's precision; of those, the one
        with the highest value at `bin_label` wins (the marker a client saw
        at that spot is the dominant site there).
        """
        key = (lat, lon)
        if key in self._sites:
            return key
        p = zoom_decimals(zoom)
        target = (round_half_away(lat, p), round_half_away(lon, p))
        best = None
        best_rank = None
        for qlat, qlon in self._sites:
            if (round_half_away(qlat, p), round_half_away(qlon, p)) != target:
                continue
            value = self._values.get((qlat, qlon, bin_label), 0.0) if bin_label else 0.0
            rank = (-value, qlat, qlon)
            if best_rank is None or rank < best_rank:
                best, best_rank = (qlat, qlon), rank
        return best

    def query_sites(
        self,
        bbox: tuple[float, float, float, float],
        bin_label: str,
        limit: int = 200,
        zoom: int = 21,
    ) -> list[tuple[float, float, float, int]]:
        """Top-`limit` sites by value inside bbox=(west, south, east, north).

        Coordinates in the result are truncated to the zoom's precision;
        ordering is value-descending with (qlat, qlon) tie-break. A bbox
        with west > east crosses the antimeridian.
        """
        west, south, east, north = bbox
        if not (-90.0 <= south <= north <= 90.0):
            raise ValueError("bbox latitudes must satisfy -90 <= south <= north <= 90")
        if not (-180.0 <= west <= 180.0 and -180.0 <= east <= 180.0):
            raise ValueError("bbox longitudes must be in [-180, 180]")
        if limit < 1:
            raise ValueError("limit must be >= 1")
        rows = self._rows.get(bin_label)
        if not rows:
            return []
        lats = self._lat_index[bin_label]
        lo = bisect_left(lats, south)
        hi = bisect_right(lats, north)
        if west <= east:
            hits = [r for r in rows[lo:hi] if west <= r[1] <= east]
        else:
            hits = [r for r in rows[lo:hi] if r[1] >= west or r[1] <= east]
        hits.sort(key=lambda r: (-r[2], r[0], r[1]))
        p = zoom_decimals(zoom)
        return [
            (round_half_away(qlat, p), round_half_away(qlon, p), value, count)
            for qlat, qlon, value, count in hits[:limit]
        ]

    def query_cloud(
        self, qlat: float, qlon: float, bin_label: str, max_tags: int = 20
    ) -> list[tuple[str, float]]:
        """Top `max_tags` (phrase, weight) at a site and bin, heaviest first."""
        tags = self._clouds.get((qlat, qlon, bin_label))
        if not tags:
            return []
        return tags[:max_tags]

    def query_spark(self, qlat: float, qlon: float, phrase: str) -> list[tuple[str, float]]:
        """Per-bin weight series for one tag, normalized so the max is 1.0."""
        raw = []
        for bin_label in self.bins:
            weight = 0.0
            for tag, w in self._clouds.get((qlat, qlon, bin_label), ()):
                if tag == phrase:
                    weight = w
                    break
            raw.append(weight)
        peak = max(raw, default=0.0)
        if peak <= 0.0:
            return [(b, 0.0) for b in self.bins]
        return [(b, w / peak) for b, w in zip(self.bins, raw)]
