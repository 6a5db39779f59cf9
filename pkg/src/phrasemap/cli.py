"""Operator command line: ingest/append/shard/merge/serve/cloud-svg/bench.

Exit codes: 0 success, 1 fatal I/O, 2 config or contract violation.
All commands are deterministic given fixed inputs and configs; nothing
wall-clock-dependent is written into outputs.
"""
from __future__ import annotations

import argparse
import csv
import sys
import time
from dataclasses import replace
from pathlib import Path

from . import pipeline, store
from .config import ConfigError, PipelineConfig, config_from_dict, config_from_file, preset_config
from .coords import site_key
from .layout import fit_radius, layout_cloud, render_svg
from .records import read_records
from .server import serve
from .synth import make_records


def _add_config_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("pipeline config")
    group.add_argument("--preset", choices=("nsf", "twitter", "custom"), default=None)
    group.add_argument("--config", help="JSON config file (preset name plus overrides)")
    group.add_argument("--ngram", type=int, dest="max_ngram")
    group.add_argument("--top-k", type=int, dest="top_k")
    group.add_argument("--gamma", type=float)
    group.add_argument("--keywords", type=int, dest="keyword_count")
    group.add_argument("--stop-rank", type=int, dest="stop_rank")
    group.add_argument("--rarity", choices=("frequency", "rank"))
    group.add_argument("--granularity", choices=("hour", "day", "week", "month", "year"))
    group.add_argument("--corpus-profile", choices=("written", "spoken"))
    group.add_argument("--corpus-path")
    group.add_argument("--strip-urls", action="store_true", default=None)
    group.add_argument("--english-filter", action="store_true", default=None)
    group.add_argument("--topic", action="append", dest="topic_terms", metavar="TERM")
    group.add_argument("--external-geocoder", action="store_true", default=None)


def _build_config(args: argparse.Namespace) -> PipelineConfig:
    if args.config:
        cfg = config_from_file(args.config)
        if args.preset:
            raise ConfigError("--preset and --config are mutually exclusive")
    else:
        cfg = preset_config(args.preset or "custom")
    params = cfg.params
    for name in ("max_ngram", "top_k", "gamma", "keyword_count", "stop_rank", "rarity"):
        value = getattr(args, name, None)
        if value is not None:
            params = replace(params, **{name: value})
    fields: dict = {"params": params}
    for name in ("granularity", "corpus_profile", "corpus_path", "strip_urls",
                 "english_filter", "external_geocoder"):
        value = getattr(args, name, None)
        if value is not None:
            fields[name] = value
    if getattr(args, "topic_terms", None):
        fields["topic_terms"] = tuple(t.lower() for t in args.topic_terms)
    return replace(cfg, **fields)


def _print_report(result: pipeline.RunResult, out_dir: str | None) -> None:
    agg = result.aggregate
    print(f"records read:  {agg.records_read}")
    print(f"records kept:  {agg.records_kept}")
    for reason in pipeline.SKIP_REASONS:
        if reason in agg.skips:
            print(f"skipped[{reason}]: {agg.skips[reason]}")
    print(f"fingerprint:   {result.fingerprint}")
    if out_dir:
        print(f"dataset:       {out_dir}")


def _write_result(out_dir, result: pipeline.RunResult) -> None:
    agg = result.aggregate
    store.write_dataset(
        out_dir,
        config=result.config.canonical_dict(),
        fingerprint=result.fingerprint,
        triples=agg.triples,
        summaries=agg.summaries,
        skips=agg.skips,
        records_read=agg.records_read,
    )


def cmd_ingest(args) -> int:
    config = _build_config(args)
    records = read_records(args.input)
    result = pipeline.run(records, config, workers=args.workers)
    _write_result(args.out, result)
    _print_report(result, args.out)
    return 0


def cmd_append(args) -> int:
    records = read_records(args.input)
    result = pipeline.append(args.dataset, records, workers=args.workers)
    _write_result(args.dataset, result)
    _print_report(result, args.dataset)
    return 0


def cmd_shard(args) -> int:
    config = _build_config(args)
    records = read_records(args.input)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    ctx = pipeline.RuntimeContext.build(config)
    paths = []
    for i in range(args.shards):
        agg = pipeline.map_records(records[i :: args.shards], ctx)
        path = out / f"shard-{i:04d}.tsv"
        pipeline.write_shard_file(path, agg, config)
        paths.append(path)
        print(f"shard: {path} ({agg.records_read} records)")
    return 0


def cmd_merge(args) -> int:
    fingerprint, config_dict, agg = pipeline.merge_shard_files(args.shards)
    config = config_from_dict(config_dict)
    if config.fingerprint() != fingerprint:
        raise ConfigError(
            "shard fingerprint does not match its config and the current corpus files; "
            "merge must run against the same corpus the shards were built with"
        )
    result = pipeline.RunResult(config, fingerprint, agg)
    _write_result(args.out, result)
    _print_report(result, args.out)
    return 0


def cmd_serve(args) -> int:
    serve(args.dataset, host=args.host, port=args.port, cors_origin=args.cors_origin)
    return 0


def cmd_cloud_svg(args) -> int:
    dataset = store.Dataset.load(args.dataset)
    site = site_key(args.lat, args.lon)
    bins = dataset.bins
    if args.bins:
        lo, _, hi = args.bins.partition("..")
        hi = hi or lo
        bins = [b for b in bins if lo <= b <= hi]
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    per_bin = [dataset.query_cloud(site[0], site[1], b, args.max_tags) for b in bins]
    radius = args.radius or fit_radius(per_bin)
    prev = None
    for bin_label, tags in zip(bins, per_bin):
        cloud = layout_cloud(tags, radius, prev=prev)
        prev = cloud
        spark = None
        if args.spark:
            spark = {
                phrase: [v for _, v in dataset.query_spark(site[0], site[1], phrase)]
                for phrase, _ in tags
            }
        path = out / f"cloud-{bin_label}.svg"
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(render_svg(cloud, spark))
        print(f"svg: {path} ({len(cloud.placed)} tags)")
    return 0


def cmd_bench(args) -> int:
    """Time ingest runs over synthetic documents; emits CSV rows."""
    doc_counts = [int(x) for x in args.docs.split(",")]
    worker_counts = [int(x) for x in args.workers.split(",")]
    ngrams = [int(x) for x in args.ngram.split(",")]
    records = make_records(max(doc_counts), seed=args.seed, doc_chars=args.doc_chars)
    writer = csv.writer(sys.stdout)
    writer.writerow(["docs", "workers", "ngram", "seconds"])
    base = preset_config("nsf")
    for n in ngrams:
        config = replace(base, params=replace(base.params, max_ngram=n))
        ctx = pipeline.RuntimeContext.build(config)
        for docs in doc_counts:
            subset = records[:docs]
            for workers in worker_counts:
                start = time.perf_counter()
                pipeline.run(subset, config, workers=workers, ctx=ctx if workers == 1 else None)
                elapsed = time.perf_counter() - start
                writer.writerow([docs, workers, n, f"{elapsed:.3f}"])
                sys.stdout.flush()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="phrasemap")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="run the full pipeline over an input file")
    p.add_argument("input")
    p.add_argument("--out", required=True, help="dataset directory to write")
    p.add_argument("--workers", type=int, default=1)
    _add_config_args(p)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("append", help="merge new records into an existing dataset")
    p.add_argument("dataset")
    p.add_argument("input")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_append)

    p = sub.add_parser("shard", help="map records into contribution files")
    p.add_argument("input")
    p.add_argument("--out", required=True, help="directory for shard files")
    p.add_argument("--shards", type=int, default=2)
    _add_config_args(p)
    p.set_defaults(func=cmd_shard)

    p = sub.add_parser("merge", help="reduce contribution files into a dataset")
    p.add_argument("shards", nargs="+", help="shard TSV files")
    p.add_argument("--out", required=True, help="dataset directory to write")
    p.set_defaults(func=cmd_merge)

    p = sub.add_parser("serve", help="serve a dataset over HTTP")
    p.add_argument("--dataset", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--cors-origin", default="*")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("cloud-svg", help="write per-bin SVG cloud frames for a site")
    p.add_argument("--dataset", required=True)
    p.add_argument("--lat", type=float, required=True)
    p.add_argument("--lon", type=float, required=True)
    p.add_argument("--bins", help="inclusive label range, e.g. 2008..2010")
    p.add_argument("--out", required=True)
    p.add_argument("--max-tags", type=int, default=20)
    p.add_argument("--radius", type=float, default=0.0, help="canvas radius; 0 = fit to tags")
    p.add_argument("--spark", action="store_true", help="overlay sparklines")
    p.set_defaults(func=cmd_cloud_svg)

    p = sub.add_parser("bench", help="time synthetic ingest runs, CSV to stdout")
    p.add_argument("--docs", default="1000,10000")
    p.add_argument("--workers", default="1,2,4")
    p.add_argument("--ngram", default="2,4")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--doc-chars", type=int, default=1829)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, store.DatasetError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
