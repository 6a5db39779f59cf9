"""Pipeline configuration: presets, canonical form, and fingerprinting.

A dataset records the fingerprint of the configuration that produced it
(canonical config JSON plus the reference-corpus file hash). Incremental
appends are refused unless fingerprints match, since mixing configs would
silently produce a dataset no full rerun could reproduce.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace
from pathlib import Path

from .corpus import PROFILES, profile_path
from .keyphrase import ExtractionParams
from .timebin import GRANULARITIES

PRESETS = ("nsf", "twitter", "custom")


class ConfigError(ValueError):
    """Invalid or mismatched pipeline configuration."""


@dataclass(frozen=True)
class PipelineConfig:
    """Everything that determines a dataset's content, minus the input."""

    preset: str = "custom"
    params: ExtractionParams = field(default_factory=ExtractionParams)
    granularity: str = "year"
    corpus_profile: str = "written"
    corpus_path: str | None = None  # overrides the bundled profile
    strip_urls: bool = False
    english_filter: bool = False
    topic_terms: tuple[str, ...] = ()
    external_geocoder: bool = False

    def __post_init__(self):
        if self.preset not in PRESETS:
            raise ConfigError(f"unknown preset {self.preset!r}")
        if self.granularity not in GRANULARITIES:
            raise ConfigError(f"unknown granularity {self.granularity!r}")
        if self.corpus_path is None and self.corpus_profile not in PROFILES:
            raise ConfigError(f"unknown corpus profile {self.corpus_profile!r}")

    def resolve_corpus_path(self) -> Path:
        return Path(self.corpus_path) if self.corpus_path else profile_path(self.corpus_profile)

    def canonical_dict(self) -> dict:
        return {
            "preset": self.preset,
            "max_ngram": self.params.max_ngram,
            "top_k": self.params.top_k,
            "gamma": self.params.gamma,
            "keyword_count": self.params.keyword_count,
            "stop_rank": self.params.stop_rank,
            "rarity": self.params.rarity,
            "granularity": self.granularity,
            "corpus_profile": self.corpus_profile,
            "corpus_path": self.corpus_path,
            "strip_urls": self.strip_urls,
            "english_filter": self.english_filter,
            "topic_terms": list(self.topic_terms),
            "external_geocoder": self.external_geocoder,
        }

    def fingerprint(self) -> str:
        canon = json.dumps(self.canonical_dict(), sort_keys=True, separators=(",", ":"))
        corpus_hash = hashlib.sha256(self.resolve_corpus_path().read_bytes()).hexdigest()
        return hashlib.sha256(f"{canon}\n{corpus_hash}".encode()).hexdigest()[:32]


def preset_config(name: str) -> PipelineConfig:
    """Built-in presets for the two shipped usage modes."""
    if name == "nsf":
        return PipelineConfig(
            preset="nsf",
            params=ExtractionParams(max_ngram=4, top_k=4),
            granularity="year",
            corpus_profile="written",
        )
    if name == "twitter":
        return PipelineConfig(
            preset="twitter",
            params=ExtractionParams(max_ngram=4, top_k=3),
            granularity="month",
            corpus_profile="spoken",
            strip_urls=True,
            english_filter=True,
            topic_terms=("android",),
        )
    if name == "custom":
        return PipelineConfig()
    raise ConfigError(f"unknown preset {name!r}")


_PARAM_FIELDS = ("max_ngram", "top_k", "gamma", "keyword_count", "stop_rank", "rarity")


def config_from_dict(data: dict) -> PipelineConfig:
    """Build a config from a preset name plus flat overrides (file or manifest)."""
    data = dict(data)
    cfg = preset_config(data.pop("preset", "custom"))
    params = cfg.params
    for name in _PARAM_FIELDS:
        if name in data:
            params = replace(params, **{name: data.pop(name)})
    fields = {}
    for name in ("granularity", "corpus_profile", "corpus_path", "strip_urls",
                 "english_filter", "external_geocoder"):
        if name in data:
            fields[name] = data.pop(name)
    if "topic_terms" in data:
        fields["topic_terms"] = tuple(data.pop("topic_terms"))
    if data:
        raise ConfigError(f"unknown config fields: {sorted(data)}")
    return replace(cfg, params=params, **fields)


def config_from_file(path: str | Path) -> PipelineConfig:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: config must be a JSON object")
    return config_from_dict(data)
