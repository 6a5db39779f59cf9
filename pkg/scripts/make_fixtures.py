#!/usr/bin/env python3
"""Record real server responses over the bundled sample dataset into the
frontend test fixtures (frontend/tests/fixtures/nsf.json).

Rerun after changing API encodings, then re-run the frontend tests.
"""
from __future__ import annotations

import json
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from phrasemap import pipeline, store
from phrasemap.config import preset_config
from phrasemap.coords import round_half_away
from phrasemap.records import read_records
from phrasemap.server import create_app
from phrasemap.store import Dataset

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "frontend" / "tests" / "fixtures" / "nsf.json"

ZOOM = 4
MAX_TAGS = 20
# the two sites the end-to-end tests interact with (exact site keys)
FOCUS_SITES = [(29.7174, -95.4018), (36.0014, -78.9382)]


def js_num(v: float) -> str:
    """Format a float the way JavaScript string-interpolates it."""
    return f"{v:g}"


def main() -> None:
    config = preset_config("nsf")
    records = read_records(ROOT / "sample_data" / "nsf_sample.jsonl")
    result = pipeline.run(records, config, workers=1)
    agg = result.aggregate
    ds_dir = Path(tempfile.mkdtemp(prefix="phrasemap-fixtures-")) / "dataset"
    store.write_dataset(
        ds_dir,
        config=config.canonical_dict(),
        fingerprint=result.fingerprint,
        triples=agg.triples,
        summaries=agg.summaries,
        skips=agg.skips,
        records_read=agg.records_read,
    )
    dataset = Dataset.load(ds_dir)
    client = TestClient(create_app(dataset))

    def get(path: str) -> dict:
        resp = client.get(path)
        assert resp.status_code == 200, (path, resp.status_code)
        return resp.json()

    fixtures: dict = {
        "meta": get("/api/meta"),
        "sites": {},
        "clouds": {},
        "sparks": {},
    }
    for bin_label in dataset.bins:
        fixtures["sites"][bin_label] = get(
            f"/api/sites?bbox=-180,-90,180,90&bin={bin_label}&zoom={ZOOM}&limit=400"
        )
    decimals = 1  # transport precision at ZOOM=4
    for lat, lon in FOCUS_SITES:
        tlat = js_num(round_half_away(lat, decimals))
        tlon = js_num(round_half_away(lon, decimals))
        for bin_label in dataset.bins:
            body = None
            for qlat, qlon in ((tlat, tlon), (js_num(lat), js_num(lon))):
                body = get(
                    f"/api/cloud?lat={qlat}&lon={qlon}&bin={bin_label}"
                    f"&max_tags={MAX_TAGS}&layout=1&zoom={ZOOM}"
                )
                fixtures["clouds"][f"{qlat},{qlon},{bin_label}"] = body
            for phrase in body["phrases"]:
                key = f"{js_num(lat)},{js_num(lon)},{phrase}"
                if key not in fixtures["sparks"]:
                    fixtures["sparks"][key] = get(
                        f"/api/spark?lat={js_num(lat)}&lon={js_num(lon)}"
                        f"&phrase={phrase.replace(' ', '%20')}"
                    )

    OUT.write_text(json.dumps(fixtures, indent=1, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {OUT} ({OUT.stat().st_size} bytes)")
    print(f"bins: {dataset.bins}")
    print(f"sites per bin: {[len(fixtures['sites'][b]['lats']) for b in dataset.bins]}")


if __name__ == "__main__":
    main()
