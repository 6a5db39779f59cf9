"""Circular tag-cloud geometry with stability-aware placement.

Tags are placed heaviest-first on a circular canvas using a free-rectangle
model: placing a box splits its rectangle into strips above/below and side
pieces at the box's height, so free rectangles always partition the unused
space and placed boxes can never overlap. Each tag goes to the free
rectangle whose center-nearest point minimizes distance-to-center plus
distance-to-its-previous-position, which keeps animated transitions calm.

Text metrics use a fixed character-cell approximation (width 0.6 and
height 1.2 times the font size) so geometry is reproducible without a font
engine; clients may re-measure but must keep relative sizes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

CHAR_WIDTH = 0.6
LINE_HEIGHT = 1.2

DEFAULT_FONT_MIN = 12.0
DEFAULT_FONT_MAX = 32.0


@dataclass(frozen=True)
class TagBox:
    phrase: str
    weight: float
    font_size: float
    cx: float
    cy: float
    width: float
    height: float

    @property
    def x0(self) -> float:
        return self.cx - self.width / 2

    @property
    def x1(self) -> float:
        return self.cx + self.width / 2

    @property
    def y0(self) -> float:
        return self.cy - self.height / 2

    @property
    def y1(self) -> float:
        return self.cy + self.height / 2


@dataclass(frozen=True)
class CloudLayout:
    radius: float
    placed: tuple[TagBox, ...]
    dropped: tuple[str, ...]

    def positions(self) -> dict[str, tuple[float, float]]:
        return {box.phrase: (box.cx, box.cy) for box in self.placed}


@dataclass(frozen=True)
class CloudDiff:
    """Per-phrase transition categories between two clouds."""

    enter: tuple[str, ...]
    exit: tuple[str, ...]
    promoted: tuple[str, ...]
    demoted: tuple[str, ...]
    steady: tuple[str, ...]


def size_tags(weights, s_min: float = DEFAULT_FONT_MIN, s_max: float = DEFAULT_FONT_MAX):
    """Map weights linearly onto [s_min, s_max] font sizes."""
    weights = list(weights)
    if not weights:
        raise ValueError("weights must be nonempty")
    if any(w <= 0 for w in weights):
        raise ValueError("weights must be positive")
    if s_min > s_max:
        raise ValueError("s_min must not exceed s_max")
    lo, hi = min(weights), max(weights)
    if lo == hi:
        mid = (s_min + s_max) / 2
        return [mid for _ in weights]
    scale = (s_max - s_min) / (hi - lo)
    return [s_min + (w - lo) * scale for w in weights]


def text_box(phrase: str, font_size: float) -> tuple[float, float]:
    """Box dimensions for a phrase under the fixed character-cell metrics."""
    return CHAR_WIDTH * font_size * len(phrase), LINE_HEIGHT * font_size


def fit_radius(
    tag_lists,
    s_min: float = DEFAULT_FONT_MIN,
    s_max: float = DEFAULT_FONT_MAX,
    minimum: float = 140.0,
) -> float:
    """Smallest canvas radius at which every tag in every list can fit.

    A box fits a circle iff half its diagonal is within the radius; taking
    the max over all lists lets one site's whole bin sequence share a canvas
    so animated transitions stay comparable.
    """
    radius = minimum
    for tags in tag_lists:
        tags = list(tags)
        if not tags:
            continue
        sizes = size_tags([w for _, w in tags], s_min, s_max)
        for (phrase, _), font in zip(tags, sizes):
            w, h = text_box(phrase, font)
            radius = max(radius, math.hypot(w, h) / 2)
    return radius


def layout_cloud(
    tags,
    radius: float,
    prev: CloudLayout | None = None,
    s_min: float = DEFAULT_FONT_MIN,
    s_max: float = DEFAULT_FONT_MAX,
) -> CloudLayout:
    """Place (phrase, weight) tags on a circle of `radius`, heaviest first.

    Tags that fit nowhere are dropped rather than shrunk. With prev given,
    re-laying-out an unchanged cloud reproduces it exactly (each tag's own
    prior position adds zero to the objective).
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    ordered = sorted(tags, key=lambda t: (-t[1], t[0]))
    if not ordered:
        return CloudLayout(radius=radius, placed=(), dropped=())
    sizes = size_tags([w for _, w in ordered], s_min, s_max)
    prev_pos = prev.positions() if prev is not None else {}
    r_sq = radius * radius

    free: list[tuple[float, float, float, float]] = [(-radius, -radius, radius, radius)]
    placed: list[TagBox] = []
    dropped: list[str] = []
    for (phrase, weight), font in zip(ordered, sizes):
        w, h = text_box(phrase, font)
        anchor = prev_pos.get(phrase)
        best = None
        for idx, (fx0, fy0, fx1, fy1) in enumerate(free):
            if w > fx1 - fx0 or h > fy1 - fy0:
                continue
            cx = min(max(0.0, fx0 + w / 2), fx1 - w / 2)
            cy = min(max(0.0, fy0 + h / 2), fy1 - h / 2)
            x_ext = max(abs(cx - w / 2), abs(cx + w / 2))
            y_ext = max(abs(cy - h / 2), abs(cy + h / 2))
            if x_ext * x_ext + y_ext * y_ext > r_sq:
                continue
            score = math.hypot(cx, cy)
            if anchor is not None:
                score += math.hypot(cx - anchor[0], cy - anchor[1])
            if best is None or (score, idx) < (best[0], best[1]):
                best = (score, idx, cx, cy)
        if best is None:
            dropped.append(phrase)
            continue
        _, idx, cx, cy = best
        placed.append(
            TagBox(phrase=phrase, weight=weight, font_size=font, cx=cx, cy=cy, width=w, height=h)
        )
        fx0, fy0, fx1, fy1 = free.pop(idx)
        bx0, by0, bx1, by1 = cx - w / 2, cy - h / 2, cx + w / 2, cy + h / 2
        # full-width strips above and below the box (y grows downward, as
        # rendered), then side pieces at the box's height; creation order
        # breaks distance ties, so "above" wins over "below"
        if fy0 < by0:
            free.append((fx0, fy0, fx1, by0))
        if by1 < fy1:
            free.append((fx0, by1, fx1, fy1))
        if fx0 < bx0:
            free.append((fx0, by0, bx0, by1))
        if bx1 < fx1:
            free.append((bx1, by0, fx1, by1))
    return CloudLayout(radius=radius, placed=tuple(placed), dropped=tuple(dropped))


def diff_layouts(prev_tags, next_tags) -> CloudDiff:
    """Categorize phrase transitions between two (phrase, weight) lists."""
    prev_w = dict(prev_tags)
    next_w = dict(next_tags)
    enter = sorted(set(next_w) - set(prev_w))
    exit_ = sorted(set(prev_w) - set(next_w))
    promoted, demoted, steady = [], [], []
    for phrase in sorted(set(prev_w) & set(next_w)):
        if next_w[phrase] > prev_w[phrase]:
            promoted.append(phrase)
        elif next_w[phrase] < prev_w[phrase]:
            demoted.append(phrase)
        else:
            steady.append(phrase)
    return CloudDiff(
        enter=tuple(enter),
        exit=tuple(exit_),
        promoted=tuple(promoted),
        demoted=tuple(demoted),
        steady=tuple(steady),
    )


def marker_radius(value: float, v_min: float, v_max: float, r_min: float, r_max: float) -> float:
    """Log-scale interpolation of a marker radius from a site value."""
    if v_min <= 0 or value <= 0:
        raise ValueError("marker values must be positive")
    if not v_min <= value <= v_max:
        raise ValueError("value must lie in [v_min, v_max]")
    if r_min > r_max:
        raise ValueError("r_min must not exceed r_max")
    if v_min == v_max:
        return (r_min + r_max) / 2
    frac = (math.log(value) - math.log(v_min)) / (math.log(v_max) - math.log(v_min))
    return r_min + (r_max - r_min) * frac


def marker_zoom_scale(zoom: int, reference_zoom: int = 4) -> float:
    """Marker magnification: half the map's rate in log space (2^(z/2))."""
    return 2.0 ** ((zoom - reference_zoom) / 2)


def _fmt(x: float) -> str:
    s = f"{x:.2f}"
    return s.rstrip("0").rstrip(".") if "." in s else s


def render_svg(layout: CloudLayout, spark: dict | None = None) -> str:
    """Deterministic SVG for a cloud layout, optionally with tag sparklines.

    Sparkline series are drawn across each tag's box, scaled to the box and
    normalized by the series maximum.
    """
    r = layout.radius
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_fmt(-r)} {_fmt(-r)} '
        f'{_fmt(2 * r)} {_fmt(2 * r)}" width="{_fmt(2 * r)}" height="{_fmt(2 * r)}">',
        f'<circle cx="0" cy="0" r="{_fmt(r)}" fill="none" stroke="#888"/>',
    ]
    for box in layout.placed:
        lines.append(
            f'<text x="{_fmt(box.cx)}" y="{_fmt(box.cy)}" font-size="{_fmt(box.font_size)}" '
            f'font-family="monospace" text-anchor="middle" dominant-baseline="central">'
            f"{escape(box.phrase)}</text>"
        )
        series = spark.get(box.phrase) if spark else None
        if not series:
            continue
        peak = max(series)
        scaled = [v / peak if peak > 0 else 0.0 for v in series]
        if len(scaled) == 1:
            scaled = scaled * 2
        step = box.width / (len(scaled) - 1)
        points = " ".join(
            f"{_fmt(box.x0 + i * step)},{_fmt(box.y1 - v * box.height)}"
            for i, v in enumerate(scaled)
        )
        lines.append(
            f'<polyline points="{points}" fill="none" stroke="#c0392b" '
            f'stroke-width="1" opacity="0.7"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
