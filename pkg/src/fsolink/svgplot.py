"""Minimal deterministic SVG line charts, no plotting dependency.

Output is SVG 1.1 with one polyline per series, tick-labeled linear
axes, and a legend. Identical input yields byte-identical output: no
timestamps, no generated ids, fixed palette order.
"""

import math
from dataclasses import dataclass

from fsolink.errors import InvalidSeriesError

PALETTE = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#8c564b",
    "#17becf",
    "#7f7f7f",
)

_WIDTH = 640
_HEIGHT = 440
_MARGIN_L = 72
_MARGIN_R = 148
_MARGIN_T = 40
_MARGIN_B = 56


@dataclass(frozen=True)
class Series:
    name: str
    xs: tuple
    ys: tuple

    def __post_init__(self):
        xs = tuple(float(v) for v in self.xs)
        ys = tuple(float(v) for v in self.ys)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)
        if not self.name:
            raise InvalidSeriesError("series name must be nonempty")
        if len(xs) != len(ys):
            raise InvalidSeriesError(f"series {self.name!r}: x/y length mismatch")
        if len(xs) < 2:
            raise InvalidSeriesError(f"series {self.name!r}: needs at least 2 points")
        if any(not math.isfinite(v) for v in xs + ys):
            raise InvalidSeriesError(f"series {self.name!r}: non-finite point")


def _esc(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _nice_step(span: float, target: int = 5) -> float:
    raw = span / target
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0):
        if mult * mag >= raw:
            return mult * mag
    return 10.0 * mag


def _ticks(lo: float, hi: float) -> list:
    step = _nice_step(hi - lo)
    k0 = math.ceil(lo / step - 1e-9)
    k1 = math.floor(hi / step + 1e-9)
    return [k * step for k in range(k0, k1 + 1)]


def _label(v: float) -> str:
    return f"{v:.10g}"


def emit_svg_plot(
    series: list,
    x_label: str,
    y_label: str,
    title: str | None = None,
) -> str:
    """SVG 1.1 line chart text for the given series."""
    if not series:
        raise InvalidSeriesError("need at least one series")
    series = [s if isinstance(s, Series) else Series(*s) for s in series]

    xmin = min(min(s.xs) for s in series)
    xmax = max(max(s.xs) for s in series)
    ymin = min(min(s.ys) for s in series)
    ymax = max(max(s.ys) for s in series)
    if xmax == xmin:
        xmin, xmax = xmin - 1.0, xmax + 1.0
    if ymax == ymin:
        ymin, ymax = ymin - 1.0, ymax + 1.0
    # headroom so curves don't hug the frame
    ypad = 0.05 * (ymax - ymin)
    ymin -= ypad
    ymax += ypad

    plot_w = _WIDTH - _MARGIN_L - _MARGIN_R
    plot_h = _HEIGHT - _MARGIN_T - _MARGIN_B

    def px(x: float) -> float:
        return _MARGIN_L + (x - xmin) / (xmax - xmin) * plot_w

    def py(y: float) -> float:
        return _MARGIN_T + (ymax - y) / (ymax - ymin) * plot_h

    out = []
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_WIDTH}" height="{_HEIGHT}" viewBox="0 0 {_WIDTH} {_HEIGHT}">'
    )
    out.append(f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="#ffffff"/>')
    out.append(
        f'<rect x="{_MARGIN_L}" y="{_MARGIN_T}" width="{plot_w}" height="{plot_h}" '
        f'fill="none" stroke="#333333" stroke-width="1"/>'
    )

    for tx in _ticks(xmin, xmax):
        gx = px(tx)
        out.append(
            f'<line x1="{gx:.2f}" y1="{_MARGIN_T}" x2="{gx:.2f}" '
            f'y2="{_MARGIN_T + plot_h}" stroke="#dddddd" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{gx:.2f}" y="{_MARGIN_T + plot_h + 18}" font-size="12" '
            f'font-family="sans-serif" text-anchor="middle">{_label(tx)}</text>'
        )
    for ty in _ticks(ymin, ymax):
        gy = py(ty)
        out.append(
            f'<line x1="{_MARGIN_L}" y1="{gy:.2f}" x2="{_MARGIN_L + plot_w}" '
            f'y2="{gy:.2f}" stroke="#dddddd" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{_MARGIN_L - 8}" y="{gy + 4:.2f}" font-size="12" '
            f'font-family="sans-serif" text-anchor="end">{_label(ty)}</text>'
        )

    out.append(
        f'<text x="{_MARGIN_L + plot_w / 2:.2f}" y="{_HEIGHT - 14}" font-size="14" '
        f'font-family="sans-serif" text-anchor="middle">{_esc(x_label)}</text>'
    )
    out.append(
        f'<text x="18" y="{_MARGIN_T + plot_h / 2:.2f}" font-size="14" '
        f'font-family="sans-serif" text-anchor="middle" '
        f'transform="rotate(-90 18 {_MARGIN_T + plot_h / 2:.2f})">{_esc(y_label)}</text>'
    )
    if title:
        out.append(
            f'<text x="{_WIDTH / 2:.2f}" y="24" font-size="16" '
            f'font-family="sans-serif" text-anchor="middle">{_esc(title)}</text>'
        )

    for i, s in enumerate(series):
        color = PALETTE[i % len(PALETTE)]
        points = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(s.xs, s.ys))
        out.append(
            f'<polyline points="{points}" fill="none" stroke="{color}" stroke-width="2"/>'
        )

    legend_x = _MARGIN_L + plot_w + 12
    for i, s in enumerate(series):
        color = PALETTE[i % len(PALETTE)]
        ly = _MARGIN_T + 14 + 20 * i
        out.append(
            f'<line x1="{legend_x}" y1="{ly}" x2="{legend_x + 22}" y2="{ly}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        out.append(
            f'<text x="{legend_x + 28}" y="{ly + 4}" font-size="12" '
            f'font-family="sans-serif">{_esc(s.name)}</text>'
        )

    out.append("</svg>")
    return "\n".join(out) + "\n"
