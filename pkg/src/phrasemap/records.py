"""Input record readers: JSON-lines or CSV with the same field names.

A record is {"text", "geo", "t0", "t1", "value"}; t1 is optional (a bare
timestamp is a degenerate range) and value defaults to 1.0 so count-style
corpora need no explicit weights.
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

from .timebin import TimeParseError, TimeRange, parse_range


class RecordError(ValueError):
    """A single malformed record; counted and skipped, never fatal."""


@dataclass(frozen=True)
class Record:
    text: str
    geo: str
    trange: TimeRange
    value: float


def parse_record(raw: dict) -> Record:
    """Validate one raw record dict, raising RecordError on any defect."""
    if not isinstance(raw, dict):
        raise RecordError("record is not an object")
    text = raw.get("text")
    geo = raw.get("geo")
    if not isinstance(text, str) or not text.strip():
        raise RecordError("missing or empty text")
    if not isinstance(geo, str) or not geo.strip():
        raise RecordError("missing or empty geo")
    if "t0" not in raw or raw["t0"] in ("", None):
        raise RecordError("missing t0")
    t1 = raw.get("t1")
    if t1 == "":
        t1 = None
    try:
        trange = parse_range(raw["t0"], t1)
    except TimeParseError as exc:
        raise RecordError(str(exc)) from None
    value = raw.get("value")
    if value in ("", None):
        value = 1.0
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise RecordError(f"value is not a number: {raw.get('value')!r}") from None
    if math.isnan(value) or math.isinf(value) or value < 0:
        raise RecordError(f"value must be a finite non-negative number: {value!r}")
    return Record(text=text, geo=geo, trange=trange, value=value)


def read_records(path: str | Path) -> list[dict]:
    """Load raw record dicts from a .jsonl/.json or .csv file.

    Unparseable JSON lines become marker dicts that the pipeline counts as
    invalid records, so one bad line never aborts an ingest.
    """
    path = Path(path)
    if path.suffix.lower() == ".csv":
        with open(path, encoding="utf-8", newline="") as fh:
            return [dict(row) for row in csv.DictReader(fh)]
    rows: list[dict] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError:
                obj = {"_invalid": f"line {lineno}: not valid JSON"}
            rows.append(obj if isinstance(obj, dict) else {"_invalid": f"line {lineno}: not an object"})
    return rows
