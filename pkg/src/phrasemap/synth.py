"""Deterministic synthetic record generator for benchmarks and tests.

Documents are sampled from the bundled written-English profile so they
pass the english filter, with a few site-specific rare terms mixed in so
different sites develop distinct clouds. Everything is driven by a seeded
RNG: same arguments, same records.
"""
from __future__ import annotations

import random
from datetime import datetime, timezone
from functools import lru_cache

from .corpus import load_profile


@lru_cache(maxsize=1)
def _vocabulary() -> tuple[list[str], list[str], list[str]]:
    corpus = load_profile("written")
    ordered = sorted(corpus.entries, key=lambda w: corpus.rank[w])
    common = ordered[:150]
    mid = ordered[150:700]
    rare = ordered[700:]
    return common, mid, rare


def _make_sites(rng: random.Random, count: int, rare: list[str]) -> list[dict]:
    sites = []
    for _ in range(count):
        lat = round(rng.uniform(25.0, 49.0), 4)
        lon = round(rng.uniform(-124.0, -67.0), 4)
        sites.append(
            {
                "geo": f"{lat},{lon}",
                "themes": rng.sample(rare, k=4),
            }
        )
    return sites


def _sentence(rng: random.Random, common, mid, themes) -> str:
    words = []
    for _ in range(rng.randint(6, 14)):
        roll = rng.random()
        if roll < 0.45:
            words.append(rng.choice(common))
        elif roll < 0.88:
            words.append(rng.choice(mid))
        else:
            words.append(rng.choice(themes))
    return " ".join(words).capitalize() + "."


def make_records(
    count: int,
    seed: int = 7,
    doc_chars: int = 1829,
    site_count: int = 300,
    year_lo: int = 2006,
    year_hi: int = 2012,
) -> list[dict]:
    """Generate `count` raw record dicts of roughly `doc_chars` characters."""
    rng = random.Random(seed)
    common, mid, rare = _vocabulary()
    sites = _make_sites(rng, site_count, rare)
    t_lo = int(datetime(year_lo, 1, 1, tzinfo=timezone.utc).timestamp())
    t_hi = int(datetime(year_hi, 12, 31, tzinfo=timezone.utc).timestamp())
    records = []
    for _ in range(count):
        site = rng.choice(sites)
        sentences = []
        length = 0
        while length < doc_chars:
            sentence = _sentence(rng, common, mid, site["themes"])
            sentences.append(sentence)
            length += len(sentence) + 1
        t0 = rng.randint(t_lo, t_hi)
        if rng.random() < 0.3:
            t1 = min(t_hi, t0 + rng.randint(1, 2 * 365) * 86400)
        else:
            t1 = t0
        records.append(
            {
                "text": " ".join(sentences),
                "geo": site["geo"],
                "t0": t0,
                "t1": t1,
                "value": round(10 ** rng.uniform(0.0, 3.0), 1),
            }
        )
    return records
