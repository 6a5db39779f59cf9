"""Calendar-aligned time bins and value proration.

All arithmetic is in UTC at second precision. Timestamps are modeled as
degenerate ranges (t0 == t1); ranges are half-open [t0, t1). Bin labels
are fixed-width per granularity so lexicographic order is chronological.
"""
from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timezone

GRANULARITIES = ("hour", "day", "week", "month", "year")

_HOUR = 3600
_DAY = 86400


class TimeParseError(ValueError):
    """Raised for unparseable timestamps or inverted ranges."""


@dataclass(frozen=True)
class TimeRange:
    """Half-open UTC range in epoch seconds; a timestamp has t0 == t1."""

    t0: int
    t1: int

    def __post_init__(self):
        if self.t1 < self.t0:
            raise TimeParseError(f"range end precedes start: {self.t0}..{self.t1}")


def parse_instant(value) -> int:
    """Parse an ISO-8601 string or epoch-seconds number to epoch seconds."""
    if isinstance(value, bool):
        raise TimeParseError(f"not a timestamp: {value!r}")
    if isinstance(value, (int, float)):
        return int(value)
    if isinstance(value, str):
        text = value.strip()
        if text.endswith(("Z", "z")):
            text = text[:-1] + "+00:00"
        try:
            dt = datetime.fromisoformat(text)
        except ValueError:
            raise TimeParseError(f"not an ISO-8601 timestamp: {value!r}") from None
        if dt.tzinfo is None:
            dt = dt.replace(tzinfo=timezone.utc)
        return int(dt.timestamp())
    raise TimeParseError(f"not a timestamp: {value!r}")


def parse_range(t0, t1=None) -> TimeRange:
    """Build a TimeRange; a missing t1 yields a degenerate range."""
    start = parse_instant(t0)
    end = start if t1 is None else parse_instant(t1)
    return TimeRange(start, end)


def bin_start(granularity: str, ts: int) -> int:
    """Epoch seconds of the start of the bin containing `ts`."""
    if granularity == "hour":
        return (ts // _HOUR) * _HOUR
    if granularity == "day":
        return (ts // _DAY) * _DAY
    if granularity == "week":
        day = ts // _DAY
        monday = day - ((day + 3) % 7)  # epoch day 0 is a Thursday
        return monday * _DAY
    dt = datetime.fromtimestamp(ts, tz=timezone.utc)
    if granularity == "month":
        return int(datetime(dt.year, dt.month, 1, tzinfo=timezone.utc).timestamp())
    if granularity == "year":
        return int(datetime(dt.year, 1, 1, tzinfo=timezone.utc).timestamp())
    raise ValueError(f"unknown granularity {granularity!r}")


def next_bin(granularity: str, start: int) -> int:
    """Start of the bin after the one starting at `start`."""
    if granularity == "hour":
        return start + _HOUR
    if granularity == "day":
        return start + _DAY
    if granularity == "week":
        return start + 7 * _DAY
    dt = datetime.fromtimestamp(start, tz=timezone.utc)
    if granularity == "month":
        year, month = (dt.year + 1, 1) if dt.month == 12 else (dt.year, dt.month + 1)
        return int(datetime(year, month, 1, tzinfo=timezone.utc).timestamp())
    if granularity == "year":
        return int(datetime(dt.year + 1, 1, 1, tzinfo=timezone.utc).timestamp())
    raise ValueError(f"unknown granularity {granularity!r}")


def bin_label(granularity: str, start: int) -> str:
    """Canonical label of the bin starting at `start` (week: its Monday date)."""
    dt = datetime.fromtimestamp(start, tz=timezone.utc)
    if granularity == "year":
        return f"{dt.year:04d}"
    if granularity == "month":
        return f"{dt.year:04d}-{dt.month:02d}"
    if granularity in ("day", "week"):
        return f"{dt.year:04d}-{dt.month:02d}-{dt.day:02d}"
    if granularity == "hour":
        return f"{dt.year:04d}-{dt.month:02d}-{dt.day:02d}T{dt.hour:02d}"
    raise ValueError(f"unknown granularity {granularity!r}")


def prorate(rng: TimeRange, value: float, granularity: str) -> list[tuple[str, float]]:
    """Split `value` over the bins the range overlaps, proportional to overlap.

    Shares conserve the value; a degenerate range puts everything in its
    single containing bin. Returned in chronological order.
    """
    if value < 0:
        raise ValueError("value must be non-negative")
    if rng.t0 == rng.t1:
        return [(bin_label(granularity, bin_start(granularity, rng.t0)), float(value))]
    duration = rng.t1 - rng.t0
    shares = []
    start = bin_start(granularity, rng.t0)
    while start < rng.t1:
        end = next_bin(granularity, start)
        overlap = min(rng.t1, end) - max(rng.t0, start)
        shares.append((bin_label(granularity, start), value * overlap / duration))
        start = end
    return shares
