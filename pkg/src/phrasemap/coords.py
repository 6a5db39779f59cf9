"""Coordinate quantization and exact fixed-point value encoding.

Sites are keyed by coordinates rounded half-away-from-zero at 1e-4
degrees. Aggregated weights/values are carried as integer nano-units so
that sums are exactly associative and commutative: any sharding or merge
order produces byte-identical aggregates.
"""
from __future__ import annotations

from decimal import ROUND_HALF_UP, Decimal

SITE_DECIMALS = 4
VALUE_SCALE = 10**9

_QUANTA = {p: Decimal(1).scaleb(-p) for p in range(0, 8)}


def round_half_away(x: float, decimals: int) -> float:
    """Round to `decimals` places, ties away from zero, -0.0 normalized."""
    q = Decimal(repr(x)).quantize(_QUANTA[decimals], rounding=ROUND_HALF_UP)
    f = float(q)
    return 0.0 if f == 0.0 else f


def coord_units(x: float, decimals: int) -> int:
    """The coordinate as an integer count of 10^-decimals degrees."""
    q = Decimal(repr(x)).quantize(_QUANTA[decimals], rounding=ROUND_HALF_UP)
    return int(q.scaleb(decimals))


def site_key(lat: float, lon: float) -> tuple[float, float]:
    """Quantize a coordinate pair to the base (site) precision."""
    return (
        round_half_away(lat, SITE_DECIMALS),
        round_half_away(lon, SITE_DECIMALS),
    )


def zoom_decimals(zoom: int) -> int:
    """Transport precision for a map zoom level: ceil(zoom/4) clamped to 1..4."""
    if not 0 <= zoom <= 21:
        raise ValueError("zoom must be in 0..21")
    return min(4, max(1, -(-zoom // 4)))


def quantize(lat: float, lon: float, zoom: int) -> tuple[float, float]:
    """Truncate a coordinate pair to the precision for `zoom`.

    At 4 decimals this is the identity on site keys.
    """
    p = zoom_decimals(zoom)
    return (round_half_away(lat, p), round_half_away(lon, p))


def fmt_coord(x: float) -> str:
    """Canonical site-precision text form of a coordinate."""
    return f"{x:.4f}"


def value_to_units(v: float) -> int:
    """Quantize a non-negative value to integer nano-units."""
    return int(round(v * VALUE_SCALE))


def units_to_value(units: int) -> float:
    return units / VALUE_SCALE


def fmt_units(units: int) -> str:
    """Canonical 9-decimal text form of a nano-unit value."""
    if units < 0:
        raise ValueError("negative value units")
    return f"{units // VALUE_SCALE}.{units % VALUE_SCALE:09d}"


def parse_units(text: str) -> int:
    """Exact inverse of fmt_units (also accepts shorter decimal tails)."""
    whole, _, frac = text.partition(".")
    return int(whole) * VALUE_SCALE + int(frac.ljust(9, "0")) if frac else int(whole) * VALUE_SCALE
