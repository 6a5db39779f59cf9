import random

import pytest

from phrasemap.timebin import (
    GRANULARITIES,
    TimeParseError,
    TimeRange,
    bin_label,
    bin_start,
    next_bin,
    parse_instant,
    parse_range,
    prorate,
)


def ts(text):
    return parse_instant(text)


def test_parse_instant_forms():
    assert parse_instant(0) == 0
    assert parse_instant("1970-01-01T00:00:00Z") == 0
    assert parse_instant("1970-01-01T00:00:00+00:00") == 0
    assert parse_instant("1970-01-02") == 86400
    assert parse_instant(1362139200.0) == 1362139200
    with pytest.raises(TimeParseError):
        parse_instant("not-a-date")
    with pytest.raises(TimeParseError):
        parse_instant(True)
    with pytest.raises(TimeParseError):
        parse_range("2010-01-02", "2010-01-01")


def test_degenerate_timestamp_single_bin():
    rng = parse_range("2013-03-15T12:00Z")
    assert rng.t0 == rng.t1
    shares = prorate(rng, 1.0, "month")
    assert shares == [("2013-03", 1.0)]


def test_exact_year_range_single_bin():
    rng = parse_range("2008-01-01", "2009-01-01")
    shares = prorate(rng, 42.0, "year")
    assert len(shares) == 1
    assert shares[0][0] == "2008"
    assert shares[0][1] == pytest.approx(42.0)


def test_monthly_proration_by_days():
    rng = parse_range("2008-03-01", "2008-07-01")
    shares = prorate(rng, 120.0, "month")
    assert [s[0] for s in shares] == ["2008-03", "2008-04", "2008-05", "2008-06"]
    values = [s[1] for s in shares]
    assert values[0] == pytest.approx(120 * 31 / 122)
    assert values[1] == pytest.approx(120 * 30 / 122)
    assert [round(v, 2) for v in values] == [30.49, 29.51, 30.49, 29.51]


def test_weeks_start_monday():
    # 2013-03-15 is a Friday; its week bin starts Monday 2013-03-11
    start = bin_start("week", ts("2013-03-15T12:00Z"))
    assert bin_label("week", start) == "2013-03-11"
    assert bin_label("week", bin_start("week", ts("2013-03-11"))) == "2013-03-11"
    assert bin_label("week", bin_start("week", ts("2013-03-10"))) == "2013-03-04"


def test_bin_labels():
    t = ts("2008-07-05T13:45:10Z")
    assert bin_label("year", bin_start("year", t)) == "2008"
    assert bin_label("month", bin_start("month", t)) == "2008-07"
    assert bin_label("day", bin_start("day", t)) == "2008-07-05"
    assert bin_label("hour", bin_start("hour", t)) == "2008-07-05T13"


def test_bins_tile_time():
    rng = random.Random(5)
    for granularity in GRANULARITIES:
        for _ in range(40):
            t = rng.randint(0, 2_000_000_000)
            start = bin_start(granularity, t)
            end = next_bin(granularity, start)
            assert start <= t < end
            assert bin_start(granularity, start) == start
            assert bin_start(granularity, end - 1) == start
            assert bin_start(granularity, end) == end


def test_conservation_on_random_ranges():
    rng = random.Random(17)
    for _ in range(300):
        granularity = rng.choice(GRANULARITIES)
        t0 = rng.randint(0, 1_500_000_000)
        t1 = t0 + rng.randint(0, 5 * 365 * 86400)
        value = rng.uniform(0, 1e6)
        shares = prorate(TimeRange(t0, t1), value, granularity)
        assert sum(s for _, s in shares) == pytest.approx(value, rel=1e-9, abs=1e-9)
        assert all(s >= 0 for _, s in shares)


def test_split_range_preserves_per_bin_totals():
    rng = random.Random(23)
    for _ in range(50):
        t0 = rng.randint(0, 1_000_000_000)
        t1 = t0 + rng.randint(2, 3 * 365 * 86400)
        mid = rng.randint(t0 + 1, t1 - 1)
        value = rng.uniform(1, 1000)
        granularity = rng.choice(GRANULARITIES)
        whole = dict(prorate(TimeRange(t0, t1), value, granularity))
        v1 = value * (mid - t0) / (t1 - t0)
        v2 = value * (t1 - mid) / (t1 - t0)
        split = {}
        for label, share in prorate(TimeRange(t0, mid), v1, granularity) + prorate(
            TimeRange(mid, t1), v2, granularity
        ):
            split[label] = split.get(label, 0.0) + share
        assert set(split) == set(whole)
        for label in whole:
            assert split[label] == pytest.approx(whole[label], rel=1e-9, abs=1e-12)


def test_zero_value_keeps_bin_entries():
    shares = prorate(parse_range("2008-03-01", "2008-05-01"), 0.0, "month")
    assert [s[0] for s in shares] == ["2008-03", "2008-04"]
    assert all(s[1] == 0.0 for s in shares)


def test_negative_value_rejected():
    with pytest.raises(ValueError):
        prorate(TimeRange(0, 10), -1.0, "day")
