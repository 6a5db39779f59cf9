"""HTTP API over a dataset with compact, byte-deterministic payloads.

Responses are columnar JSON assembled by hand: coordinates travel as
integers at the zoom's precision (divide by 10^p client-side) and values
at three significant digits, which keeps a 200-site map update within a
few kilobytes uncompressed. Bodies are pure functions of (dataset bytes,
query), so repeated requests are byte-identical and cacheable.
"""
from __future__ import annotations

import json
from collections import OrderedDict

from fastapi import FastAPI, HTTPException, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.middleware.gzip import GZipMiddleware

from .config import PRESETS
from .coords import coord_units, zoom_decimals
from .layout import CloudLayout, diff_layouts, fit_radius, layout_cloud, render_svg
from .store import Dataset

DEFAULT_LIMIT = 200
MAX_LIMIT = 1000
DEFAULT_MAX_TAGS = 20
MAX_TAGS_CAP = 100
CLOUD_RADIUS = 140.0


def fmt_sig3(v: float) -> str:
    """Three-significant-digit JSON number, shortest exponent form."""
    if v == 0:
        return "0"
    s = f"{v:.3g}"
    if "e" in s:
        mantissa, exponent = s.split("e")
        return f"{mantissa}e{int(exponent)}"
    return s


def _fmt2(x: float) -> str:
    s = f"{x:.2f}"
    return s.rstrip("0").rstrip(".") if "." in s else s


def _json_response(body: str, status_code: int = 200) -> Response:
    return Response(content=body, status_code=status_code, media_type="application/json")


def _layout_json(cloud: CloudLayout) -> str:
    placed = cloud.placed
    return (
        '{"radius":' + _fmt2(cloud.radius)
        + ',"placed":' + json.dumps([b.phrase for b in placed], separators=(",", ":"))
        + ',"x":[' + ",".join(_fmt2(b.cx) for b in placed)
        + '],"y":[' + ",".join(_fmt2(b.cy) for b in placed)
        + '],"w":[' + ",".join(_fmt2(b.width) for b in placed)
        + '],"h":[' + ",".join(_fmt2(b.height) for b in placed)
        + '],"font":[' + ",".join(_fmt2(b.font_size) for b in placed)
        + '],"dropped":' + json.dumps(list(cloud.dropped), separators=(",", ":"))
        + "}"
    )


class _CloudChains:
    """Small LRU of per-site layout sequences across bins.

    Layouts are chained bin to bin (each uses the previous bin's layout as
    its stability anchor), so a site's whole sequence is computed together.
    """

    def __init__(self, dataset: Dataset, capacity: int = 128):
        self.dataset = dataset
        self.capacity = capacity
        self._cache: OrderedDict = OrderedDict()

    def layouts(self, site: tuple[float, float], max_tags: int) -> dict[str, CloudLayout]:
        key = (site, max_tags)
        if key in self._cache:
            self._cache.move_to_end(key)
            return self._cache[key]
        per_bin = [
            self.dataset.query_cloud(site[0], site[1], bin_label, max_tags)
            for bin_label in self.dataset.bins
        ]
        # one canvas radius for the whole bin sequence, grown so every tag
        # can at least individually fit (long phrases otherwise drop)
        radius = fit_radius(per_bin, minimum=CLOUD_RADIUS)
        chain: dict[str, CloudLayout] = {}
        prev: CloudLayout | None = None
        for bin_label, tags in zip(self.dataset.bins, per_bin):
            cloud = layout_cloud(tags, radius, prev=prev)
            chain[bin_label] = cloud
            prev = cloud
        self._cache[key] = chain
        if len(self._cache) > self.capacity:
            self._cache.popitem(last=False)
        return chain


def create_app(dataset: Dataset, cors_origin: str = "*") -> FastAPI:
    """Build the API app over an immutable dataset snapshot."""
    app = FastAPI(title="phrasemap", docs_url=None, redoc_url=None)
    app.add_middleware(GZipMiddleware, minimum_size=512)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[cors_origin],
        allow_methods=["GET"],
        allow_headers=["*"],
    )
    chains = _CloudChains(dataset)
    meta_body = json.dumps(
        dict(dataset.manifest, presets=list(PRESETS)),
        sort_keys=True,
        separators=(",", ":"),
    )

    def _require_bin(bin_label: str) -> None:
        if bin_label not in dataset.bins:
            raise HTTPException(status_code=404, detail=f"unknown bin {bin_label!r}")

    def _locate(lat: float, lon: float, zoom: int, bin_label: str | None):
        site = dataset.locate_site(lat, lon, zoom=zoom, bin_label=bin_label)
        if site is None:
            raise HTTPException(status_code=404, detail="unknown site")
        return site

    @app.get("/api/meta")
    def meta():
        return _json_response(meta_body)

    @app.get("/api/sites")
    def sites(bbox: str, bin: str, zoom: int = 21, limit: int = DEFAULT_LIMIT):
        parts = bbox.split(",")
        if len(parts) != 4:
            raise HTTPException(status_code=400, detail="malformed bbox, want west,south,east,north")
        try:
            west, south, east, north = (float(p) for p in parts)
        except ValueError:
            raise HTTPException(status_code=400, detail="malformed bbox, want west,south,east,north")
        if not 0 <= zoom <= 21:
            raise HTTPException(status_code=400, detail="zoom must be in 0..21")
        _require_bin(bin)
        limit = max(1, min(limit, MAX_LIMIT))
        try:
            rows = dataset.query_sites((west, south, east, north), bin, limit=limit, zoom=zoom)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        p = zoom_decimals(zoom)
        body = (
            '{"bin":' + json.dumps(bin)
            + ',"p":' + str(p)
            + ',"lats":[' + ",".join(str(coord_units(lat, p)) for lat, _, _, _ in rows)
            + '],"lons":[' + ",".join(str(coord_units(lon, p)) for _, lon, _, _ in rows)
            + '],"values":[' + ",".join(fmt_sig3(value) for _, _, value, _ in rows)
            + '],"counts":[' + ",".join(str(count) for _, _, _, count in rows)
            + "]}"
        )
        return _json_response(body)

    @app.get("/api/cloud")
    def cloud(
        lat: float,
        lon: float,
        bin: str,
        max_tags: int = DEFAULT_MAX_TAGS,
        layout: int = 0,
        zoom: int = 21,
    ):
        _require_bin(bin)
        max_tags = max(1, min(max_tags, MAX_TAGS_CAP))
        site = _locate(lat, lon, zoom, bin)
        tags = dataset.query_cloud(site[0], site[1], bin, max_tags)
        body = (
            '{"bin":' + json.dumps(bin)
            + ',"lat":' + repr(site[0])
            + ',"lon":' + repr(site[1])
            + ',"phrases":' + json.dumps([t[0] for t in tags], separators=(",", ":"))
            + ',"weights":[' + ",".join(fmt_sig3(t[1]) for t in tags) + "]"
        )
        if layout:
            chain = chains.layouts(site, max_tags)
            idx = dataset.bins.index(bin)
            prev_tags = (
                dataset.query_cloud(site[0], site[1], dataset.bins[idx - 1], max_tags)
                if idx > 0
                else []
            )
            diff = diff_layouts(prev_tags, tags)
            body += (
                ',"layout":' + _layout_json(chain[bin])
                + ',"diff":' + json.dumps(
                    {
                        "enter": list(diff.enter),
                        "exit": list(diff.exit),
                        "promoted": list(diff.promoted),
                        "demoted": list(diff.demoted),
                        "steady": list(diff.steady),
                    },
                    separators=(",", ":"),
                )
            )
        return _json_response(body + "}")

    @app.get("/api/spark")
    def spark(lat: float, lon: float, phrase: str, zoom: int = 21):
        site = _locate(lat, lon, zoom, None)
        series = dataset.query_spark(site[0], site[1], phrase)
        body = (
            '{"phrase":' + json.dumps(phrase)
            + ',"bins":' + json.dumps([b for b, _ in series], separators=(",", ":"))
            + ',"values":[' + ",".join(fmt_sig3(v) for _, v in series) + "]}"
        )
        return _json_response(body)

    @app.get("/api/cloud.svg")
    def cloud_svg(lat: float, lon: float, bin: str, max_tags: int = DEFAULT_MAX_TAGS, zoom: int = 21):
        _require_bin(bin)
        max_tags = max(1, min(max_tags, MAX_TAGS_CAP))
        site = _locate(lat, lon, zoom, bin)
        chain = chains.layouts(site, max_tags)
        svg = render_svg(chain[bin])
        return Response(content=svg, media_type="image/svg+xml")

    return app


def serve(dataset_dir, host: str = "127.0.0.1", port: int = 8000, cors_origin: str = "*") -> None:
    """Load a dataset directory and serve it (blocking)."""
    import uvicorn

    app = create_app(Dataset.load(dataset_dir), cors_origin=cors_origin)
    uvicorn.run(app, host=host, port=port, log_level="warning")
