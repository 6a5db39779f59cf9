"""Three-tier resolution of geo-reference strings to coordinates.

Order: literal "lat,lon" pair, 5-digit zip against the ZCTA-style table,
"city, region[, country]" against the gazetteer, then an optional external
HTTP geocoder with a persistent on-disk cache. Unresolvable references are
an expected per-record condition, never fatal to a run.
"""
from __future__ import annotations

import json
import logging
import os
import re
import threading
import urllib.parse
import urllib.request
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

log = logging.getLogger(__name__)

ENV_GEOCODER_URL = "PHRASEMAP_GEOCODER_URL"
ENV_GEOCODER_KEY = "PHRASEMAP_GEOCODER_KEY"

_ZIP_RE = re.compile(r"(?<!\d)(\d{5})(?!\d)")

_STATE_ABBREV = {
    "alabama": "al", "alaska": "ak", "arizona": "az", "arkansas": "ar",
    "california": "ca", "colorado": "co", "connecticut": "ct", "delaware": "de",
    "florida": "fl", "georgia": "ga", "hawaii": "hi", "idaho": "id",
    "illinois": "il", "indiana": "in", "iowa": "ia", "kansas": "ks",
    "kentucky": "ky", "louisiana": "la", "maine": "me", "maryland": "md",
    "massachusetts": "ma", "michigan": "mi", "minnesota": "mn",
    "mississippi": "ms", "missouri": "mo", "montana": "mt", "nebraska": "ne",
    "nevada": "nv", "new hampshire": "nh", "new jersey": "nj",
    "new mexico": "nm", "new york": "ny", "north carolina": "nc",
    "north dakota": "nd", "ohio": "oh", "oklahoma": "ok", "oregon": "or",
    "pennsylvania": "pa", "rhode island": "ri", "south carolina": "sc",
    "south dakota": "sd", "tennessee": "tn", "texas": "tx", "utah": "ut",
    "vermont": "vt", "virginia": "va", "washington": "wa",
    "west virginia": "wv", "wisconsin": "wi", "wyoming": "wy",
    "district of columbia": "dc",
}

_COUNTRY_ALIASES = {
    "usa": "us", "united states": "us", "united states of america": "us",
    "u.s.": "us", "u.s.a.": "us", "america": "us",
    "canada": "ca", "united kingdom": "gb", "uk": "gb", "great britain": "gb",
    "england": "gb", "scotland": "gb", "denmark": "dk", "germany": "de",
    "france": "fr", "japan": "jp", "australia": "au", "india": "in",
    "brazil": "br", "mexico": "mx", "ireland": "ie",
}


class Unresolvable(Exception):
    """No tier could map the geo reference to coordinates."""

    def __init__(self, geo_ref: str):
        super().__init__(f"unresolvable geo reference: {geo_ref!r}")
        self.geo_ref = geo_ref


@dataclass(frozen=True)
class GeoPoint:
    lat: float
    lon: float
    source: str  # zip | gazetteer | external | literal


def _in_range(lat: float, lon: float) -> bool:
    return -90.0 <= lat <= 90.0 and -180.0 <= lon <= 180.0


def load_zip_table(path: str | Path) -> dict[str, tuple[float, float]]:
    """Load a `zip,lat,lon` CSV (with header) into a lookup dict."""
    table = {}
    with open(path, encoding="utf-8") as fh:
        header = fh.readline()
        if not header.lower().startswith("zip"):
            raise ValueError(f"{path}: expected a zip,lat,lon header")
        for line in fh:
            line = line.strip()
            if not line:
                continue
            zipcode, lat, lon = line.split(",")
            table[zipcode] = (float(lat), float(lon))
    return table


def load_gazetteer(path: str | Path) -> dict[tuple, list[tuple[float, float, str]]]:
    """Load the place-name TSV; rows keyed progressively by name/admin/country.

    Row order is preserved: the first matching row wins for ambiguous names.
    """
    index: dict[tuple, list[tuple[float, float, str]]] = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            name, admin, country, lat, lon = line.split("\t")
            row = (float(lat), float(lon), f"{name}, {admin}, {country}")
            name_n = name.strip().lower()
            admin_n = admin.strip().lower()
            country_n = country.strip().lower()
            for key in (
                (name_n, admin_n, country_n),
                (name_n, admin_n),
                (name_n,),
            ):
                index.setdefault(key, []).append(row)
    return index


def load_default_tables() -> tuple[dict, dict]:
    """The bundled zip table and gazetteer."""
    data = resources.files("phrasemap").joinpath("data")
    return (
        load_zip_table(str(data.joinpath("zipcodes.csv"))),
        load_gazetteer(str(data.joinpath("gazetteer.tsv"))),
    )


def normalize_query(geo_ref: str) -> str:
    """Canonical cache/lookup key: collapsed whitespace, lowercased."""
    return " ".join(geo_ref.split()).lower()


class ExternalGeocoder:
    """HTTP geocoder client with an append-only TSV cache.

    The provider contract is one GET returning `{"lat": .., "lon": ..}`;
    the endpoint template comes from PHRASEMAP_GEOCODER_URL (with `{query}`
    and optional `{key}` placeholders). A `fetch` callable can replace the
    HTTP layer entirely, e.g. for offline stubs in tests.
    """

    def __init__(self, cache_path: str | Path | None = None, fetch=None):
        self.cache_path = Path(cache_path) if cache_path else None
        self._fetch = fetch or self._http_fetch
        self._cache: dict[str, tuple[float, float]] = {}
        self._lock = threading.Lock()
        self.requests_made = 0
        if self.cache_path and self.cache_path.exists():
            with open(self.cache_path, encoding="utf-8") as fh:
                for line in fh:
                    parts = line.rstrip("\n").split("\t")
                    if len(parts) == 3:
                        self._cache[parts[0]] = (float(parts[1]), float(parts[2]))

    @staticmethod
    def _http_fetch(query: str) -> tuple[float, float] | None:
        template = os.environ.get(ENV_GEOCODER_URL)
        if not template:
            return None
        url = template.format(
            query=urllib.parse.quote(query),
            key=os.environ.get(ENV_GEOCODER_KEY, ""),
        )
        try:
            with urllib.request.urlopen(url, timeout=10) as resp:
                payload = json.loads(resp.read().decode("utf-8"))
            return float(payload["lat"]), float(payload["lon"])
        except Exception as exc:
            log.warning("external geocoder failed for %r: %s", query, exc)
            return None

    def lookup(self, geo_ref: str) -> tuple[float, float] | None:
        query = normalize_query(geo_ref)
        with self._lock:
            if query in self._cache:
                return self._cache[query]
        self.requests_made += 1
        result = self._fetch(query)
        if result is None:
            return None
        lat, lon = float(result[0]), float(result[1])
        if not _in_range(lat, lon):
            return None
        with self._lock:
            self._cache[query] = (lat, lon)
            if self.cache_path:
                with open(self.cache_path, "a", encoding="utf-8") as fh:
                    fh.write(f"{query}\t{lat!r}\t{lon!r}\n")
        return lat, lon


class Geocoder:
    """Resolver over immutable tables plus an optional external client."""

    def __init__(self, zip_table: dict, gazetteer: dict, external: ExternalGeocoder | None = None):
        self.zip_table = zip_table
        self.gazetteer = gazetteer
        self.external = external

    def resolve(self, geo_ref: str) -> GeoPoint:
        """Resolve one reference; raises Unresolvable when every tier misses."""
        text = geo_ref.strip()
        if not text:
            raise Unresolvable(geo_ref)

        parts = [p.strip() for p in text.split(",")]
        if len(parts) == 2:
            try:
                lat, lon = float(parts[0]), float(parts[1])
            except ValueError:
                pass
            else:
                if _in_range(lat, lon):
                    return GeoPoint(lat, lon, "literal")

        zip_match = _ZIP_RE.search(text)
        if zip_match and zip_match.group(1) in self.zip_table:
            lat, lon = self.zip_table[zip_match.group(1)]
            return GeoPoint(lat, lon, "zip")

        hit = self._gazetteer_lookup(parts)
        if hit is not None:
            return GeoPoint(hit[0], hit[1], "gazetteer")

        if self.external is not None:
            coords = self.external.lookup(text)
            if coords is not None:
                return GeoPoint(coords[0], coords[1], "external")

        raise Unresolvable(geo_ref)

    def _gazetteer_lookup(self, parts: list[str]) -> tuple[float, float, str] | None:
        name = parts[0].lower()
        admin = parts[1].lower() if len(parts) > 1 else None
        country = parts[2].lower() if len(parts) > 2 else None
        if admin:
            admin = _STATE_ABBREV.get(admin, admin)
        if country:
            country = _COUNTRY_ALIASES.get(country, country)
        keys = []
        if admin and country:
            keys.append((name, admin, country))
        if admin:
            keys.append((name, admin))
        keys.append((name,))
        for key in keys:
            rows = self.gazetteer.get(key)
            if rows:
                if len(rows) > 1:
                    log.info(
                        "ambiguous place %r: %d rows, using %s",
                        ", ".join(parts), len(rows), rows[0][2],
                    )
                return rows[0]
        return None
