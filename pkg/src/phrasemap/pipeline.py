"""Map/reduce core: shard records, extract per record, aggregate to sites.

Per-record work is a pure function of (record, corpus, config), and the
reduce step sums integer nano-units, which is associative and commutative.
Together these guarantee that any worker count, sharding, or merge order
produces a byte-identical dataset, and that appending new records later
equals a full rerun over the union.
"""
from __future__ import annotations

import json
import multiprocessing
from dataclasses import dataclass, field

from . import store
from .config import ConfigError, PipelineConfig, config_from_dict
from .coords import fmt_coord, fmt_units, parse_units, site_key, value_to_units
from .corpus import ReferenceCorpus, load_corpus
from .geocode import ExternalGeocoder, Geocoder, Unresolvable, load_default_tables
from .keyphrase import extract
from .records import RecordError, parse_record
from .textprep import is_english, matches_topic, prepare
from .timebin import prorate

SKIP_REASONS = (
    "invalid_record",
    "not_english",
    "topic_mismatch",
    "geocode_unresolvable",
    "empty_extraction",
)

TripleKey = tuple[float, float, str, str]  # (qlat, qlon, bin, phrase)
SummaryKey = tuple[float, float, str]


@dataclass
class Aggregate:
    """Reduced state: integer nano-unit sums plus bookkeeping counters."""

    triples: dict[TripleKey, int] = field(default_factory=dict)
    summaries: dict[SummaryKey, list] = field(default_factory=dict)  # [units, doc_count]
    skips: dict[str, int] = field(default_factory=dict)
    records_read: int = 0

    def merge(self, other: "Aggregate") -> None:
        triples = self.triples
        for key, units in other.triples.items():
            triples[key] = triples.get(key, 0) + units
        summaries = self.summaries
        for key, (units, count) in other.summaries.items():
            entry = summaries.get(key)
            if entry is None:
                summaries[key] = [units, count]
            else:
                entry[0] += units
                entry[1] += count
        for reason, count in other.skips.items():
            self.skips[reason] = self.skips.get(reason, 0) + count
        self.records_read += other.records_read

    @property
    def records_kept(self) -> int:
        return self.records_read - sum(self.skips.values())


@dataclass
class RunResult:
    config: PipelineConfig
    fingerprint: str
    aggregate: Aggregate


class RuntimeContext:
    """Per-process immutable state shared by all record mappers."""

    def __init__(self, config: PipelineConfig, corpus: ReferenceCorpus, geocoder: Geocoder):
        self.config = config
        self.corpus = corpus
        self.geocoder = geocoder

    @classmethod
    def build(cls, config: PipelineConfig, geocoder_cache=None) -> "RuntimeContext":
        corpus = load_corpus(config.resolve_corpus_path())
        zip_table, gazetteer = load_default_tables()
        external = ExternalGeocoder(cache_path=geocoder_cache) if config.external_geocoder else None
        return cls(config, corpus, Geocoder(zip_table, gazetteer, external))


def map_record(raw: dict, ctx: RuntimeContext):
    """Map one raw record to its contributions.

    Returns (None, triple_items, summary_items) on success, where triple
    items are ((qlat, qlon, bin, phrase), weight_units) and summary items
    ((qlat, qlon, bin), value_units); or (skip_reason, None, None).
    """
    cfg = ctx.config
    try:
        rec = parse_record(raw)
    except RecordError:
        return "invalid_record", None, None
    prepared = prepare(rec.text, strip_urls=cfg.strip_urls)
    if cfg.english_filter and not is_english(prepared, rec.text, ctx.corpus):
        return "not_english", None, None
    if cfg.topic_terms and not matches_topic(prepared, cfg.topic_terms):
        return "topic_mismatch", None, None
    try:
        point = ctx.geocoder.resolve(rec.geo)
    except Unresolvable:
        return "geocode_unresolvable", None, None
    phrases = extract(prepared, ctx.corpus, cfg.params)
    if not phrases:
        return "empty_extraction", None, None

    qlat, qlon = site_key(point.lat, point.lon)
    triples = []
    summaries = []
    for bin_label, share in prorate(rec.trange, rec.value, cfg.granularity):
        summaries.append(((qlat, qlon, bin_label), value_to_units(share)))
        for phrase in phrases:
            units = value_to_units(phrase.weight * share)
            if units > 0:
                triples.append(((qlat, qlon, bin_label, phrase.display), units))
    return None, triples, summaries


def map_records(records, ctx: RuntimeContext) -> Aggregate:
    """Map a shard of raw records and reduce into one aggregate."""
    agg = Aggregate()
    triples = agg.triples
    summaries = agg.summaries
    for raw in records:
        agg.records_read += 1
        reason, trip_items, summ_items = map_record(raw, ctx)
        if reason is not None:
            agg.skips[reason] = agg.skips.get(reason, 0) + 1
            continue
        for key, units in trip_items:
            triples[key] = triples.get(key, 0) + units
        for key, units in summ_items:
            entry = summaries.get(key)
            if entry is None:
                summaries[key] = [units, 1]
            else:
                entry[0] += units
                entry[1] += 1
    return agg


_WORKER_CTX: RuntimeContext | None = None


def _init_worker(config_dict: dict) -> None:
    global _WORKER_CTX
    _WORKER_CTX = RuntimeContext.build(config_from_dict(config_dict))


def _map_shard(records) -> Aggregate:
    return map_records(records, _WORKER_CTX)


def run(
    records,
    config: PipelineConfig,
    workers: int = 1,
    ctx: RuntimeContext | None = None,
) -> RunResult:
    """Run the full map/reduce over raw record dicts.

    Records are sharded round-robin over `workers` processes; the result is
    identical for any worker count. `ctx` short-circuits context building
    for in-process runs (workers must be 1 in that case).
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    records = list(records)
    fingerprint = config.fingerprint()
    if workers == 1:
        if ctx is None:
            ctx = RuntimeContext.build(config)
        return RunResult(config, fingerprint, map_records(records, ctx))
    shards = [records[i::workers] for i in range(workers)]
    agg = Aggregate()
    with multiprocessing.Pool(
        processes=workers, initializer=_init_worker, initargs=(config.canonical_dict(),)
    ) as pool:
        for partial in pool.imap_unordered(_map_shard, shards):
            agg.merge(partial)
    return RunResult(config, fingerprint, agg)


def append(
    dataset_dir,
    new_records,
    workers: int = 1,
    config: PipelineConfig | None = None,
    ctx: RuntimeContext | None = None,
) -> RunResult:
    """Merge new records into an existing dataset's aggregate.

    Refuses to proceed unless the stored fingerprint matches the current
    config and corpus bytes; the result equals a full rerun over the union
    of old and new input.
    """
    manifest, triples, summaries = store.read_tables(dataset_dir)
    existing = Aggregate(
        triples=triples,
        summaries=summaries,
        skips=dict(manifest["skipped"]),
        records_read=manifest["records_read"],
    )
    stored_config = config_from_dict(manifest["config"])
    fingerprint = stored_config.fingerprint()
    if fingerprint != manifest["fingerprint"]:
        raise ConfigError(
            "dataset fingerprint mismatch: the corpus file or config no longer "
            f"matches the one that built {dataset_dir} "
            f"(stored {manifest['fingerprint']}, current {fingerprint})"
        )
    if config is not None and config.fingerprint() != fingerprint:
        raise ConfigError(
            "provided config does not match the dataset's config fingerprint "
            f"({config.fingerprint()} != {fingerprint}); "
            "append requires the exact config that built the dataset"
        )
    result = run(new_records, stored_config, workers=workers, ctx=ctx)
    result.aggregate.merge(existing)
    return result


# Shard/merge with files as the interface, for splitting a job across
# machines: `shard` writes one contribution file per shard, `merge` reduces
# any number of them into a dataset equal to a direct ingest.

def write_shard_file(path, aggregate: Aggregate, config: PipelineConfig) -> None:
    """Serialize one shard's aggregate as a sorted contribution TSV."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"f\t{config.fingerprint()}\n")
        fh.write(f"c\t{json.dumps(config.canonical_dict(), sort_keys=True, separators=(',', ':'))}\n")
        fh.write(f"m\trecords_read\t{aggregate.records_read}\n")
        for reason in sorted(aggregate.skips):
            fh.write(f"k\t{reason}\t{aggregate.skips[reason]}\n")
        for (qlat, qlon, bin_label), (units, count) in sorted(aggregate.summaries.items()):
            fh.write(
                f"s\t{fmt_coord(qlat)}\t{fmt_coord(qlon)}\t{bin_label}\t{fmt_units(units)}\t{count}\n"
            )
        for key in sorted(aggregate.triples, key=lambda k: (k[0], k[1], k[2], -aggregate.triples[k], k[3])):
            qlat, qlon, bin_label, phrase = key
            fh.write(
                f"t\t{fmt_coord(qlat)}\t{fmt_coord(qlon)}\t{bin_label}\t{phrase}\t{fmt_units(aggregate.triples[key])}\n"
            )


def read_shard_file(path) -> tuple[str, dict | None, Aggregate]:
    """Parse a contribution TSV back into (fingerprint, config, aggregate)."""
    agg = Aggregate()
    fingerprint = None
    config_dict = None
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            parts = line.rstrip("\n").split("\t")
            tag = parts[0]
            if tag == "f":
                fingerprint = parts[1]
            elif tag == "c":
                config_dict = json.loads(parts[1])
            elif tag == "m":
                agg.records_read += int(parts[2])
            elif tag == "k":
                agg.skips[parts[1]] = agg.skips.get(parts[1], 0) + int(parts[2])
            elif tag == "s":
                key = (float(parts[1]), float(parts[2]), parts[3])
                agg.summaries[key] = [parse_units(parts[4]), int(parts[5])]
            elif tag == "t":
                key = (float(parts[1]), float(parts[2]), parts[3], parts[4])
                agg.triples[key] = parse_units(parts[5])
            else:
                raise ValueError(f"{path}: unknown row tag {tag!r}")
    if fingerprint is None:
        raise ValueError(f"{path}: missing fingerprint row")
    return fingerprint, config_dict, agg


def merge_shard_files(paths) -> tuple[str, dict, Aggregate]:
    """Reduce any set of shard files; order-insensitive."""
    merged = Aggregate()
    fingerprint = None
    config_dict = None
    for path in paths:
        fp, cfg, agg = read_shard_file(path)
        if fingerprint is None:
            fingerprint, config_dict = fp, cfg
        elif fp != fingerprint:
            raise ConfigError(f"shard {path} was built with a different config ({fp} != {fingerprint})")
        merged.merge(agg)
    if fingerprint is None:
        raise ValueError("no shard files given")
    if config_dict is None:
        raise ValueError("shard files carry no config row")
    return fingerprint, config_dict, merged
