"""Minimal self-contained SVG charts (line and color-mapped surface).

No plotting library is used so that emitted figures have no runtime
dependencies and are byte-reproducible.
"""

from __future__ import annotations

import math

WIDTH, HEIGHT = 720, 480
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 150, 30, 55

SERIES_COLORS = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
]

# viridis-like anchors for the surface color map
_CMAP = [(68, 1, 84), (59, 82, 139), (33, 145, 140), (94, 201, 98), (253, 231, 37)]


def _fmt(x):
    return f"{x:.6g}"


def _ticks(lo, hi, count=6):
    if hi == lo:
        return [lo]
    raw = (hi - lo) / max(count - 1, 1)
    mag = 10.0 ** math.floor(math.log10(abs(raw)))
    for mult in (1, 2, 2.5, 5, 10):
        if mag * mult >= raw:
            step = mag * mult
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-12 * abs(step):
        ticks.append(0.0 if abs(t) < 1e-12 * abs(step) else t)
        t += step
    return ticks or [lo, hi]


def _color(frac):
    frac = min(max(frac, 0.0), 1.0)
    pos = frac * (len(_CMAP) - 1)
    i = min(int(pos), len(_CMAP) - 2)
    w = pos - i
    rgb = [round(a + (b - a) * w) for a, b in zip(_CMAP[i], _CMAP[i + 1])]
    return f"rgb({rgb[0]},{rgb[1]},{rgb[2]})"


def _axes(parts, x_lo, x_hi, y_lo, y_hi, x_label, y_label, to_px):
    parts.append(
        f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{WIDTH - MARGIN_L - MARGIN_R}" '
        f'height="{HEIGHT - MARGIN_T - MARGIN_B}" fill="none" stroke="black"/>'
    )
    for t in _ticks(x_lo, x_hi):
        px, _ = to_px(t, y_lo)
        parts.append(f'<line x1="{_fmt(px)}" y1="{HEIGHT - MARGIN_B}" x2="{_fmt(px)}" y2="{HEIGHT - MARGIN_B + 5}" stroke="black"/>')
        parts.append(f'<text x="{_fmt(px)}" y="{HEIGHT - MARGIN_B + 18}" font-size="11" text-anchor="middle">{_fmt(t)}</text>')
    for t in _ticks(y_lo, y_hi):
        _, py = to_px(x_lo, t)
        parts.append(f'<line x1="{MARGIN_L - 5}" y1="{_fmt(py)}" x2="{MARGIN_L}" y2="{_fmt(py)}" stroke="black"/>')
        parts.append(f'<text x="{MARGIN_L - 8}" y="{_fmt(py + 4)}" font-size="11" text-anchor="end">{_fmt(t)}</text>')
    parts.append(
        f'<text x="{(MARGIN_L + WIDTH - MARGIN_R) / 2}" y="{HEIGHT - 12}" '
        f'font-size="13" text-anchor="middle">{x_label}</text>'
    )
    parts.append(
        f'<text x="16" y="{(MARGIN_T + HEIGHT - MARGIN_B) / 2}" font-size="13" text-anchor="middle" '
        f'transform="rotate(-90 16 {(MARGIN_T + HEIGHT - MARGIN_B) / 2})">{y_label}</text>'
    )


def line_chart(x, series, x_label="", y_label=""):
    """SVG line chart. `series` is {name: y-values}, all aligned with `x`."""
    xs = [float(v) for v in x]
    ys_all = [float(v) for vals in series.values() for v in vals if math.isfinite(v)]
    if not xs or not ys_all:
        raise ValueError("nothing to plot")
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys_all), max(ys_all)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    pad = 0.05 * (y_hi - y_lo)
    y_lo -= pad
    y_hi += pad

    def to_px(px, py):
        fx = (px - x_lo) / (x_hi - x_lo)
        fy = (py - y_lo) / (y_hi - y_lo)
        return (
            MARGIN_L + fx * (WIDTH - MARGIN_L - MARGIN_R),
            HEIGHT - MARGIN_B - fy * (HEIGHT - MARGIN_T - MARGIN_B),
        )

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    _axes(parts, x_lo, x_hi, y_lo, y_hi, x_label, y_label, to_px)
    for idx, (name, vals) in enumerate(series.items()):
        color = SERIES_COLORS[idx % len(SERIES_COLORS)]
        pts = " ".join(
            f"{_fmt(px)},{_fmt(py)}"
            for px, py in (to_px(a, float(b)) for a, b in zip(xs, vals) if math.isfinite(float(b)))
        )
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        ly = MARGIN_T + 16 + 16 * idx
        parts.append(
            f'<line x1="{WIDTH - MARGIN_R + 10}" y1="{ly - 4}" x2="{WIDTH - MARGIN_R + 34}" '
            f'y2="{ly - 4}" stroke="{color}" stroke-width="1.5"/>'
        )
        parts.append(f'<text x="{WIDTH - MARGIN_R + 38}" y="{ly}" font-size="11">{name}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def surface_chart(x, y, z, x_label="", y_label="", z_label=""):
    """Color-mapped surface over a rectangular (x, y) grid.

    `z` is row-major with rows indexed by `y` and columns by `x`.
    """
    xs = [float(v) for v in x]
    ys = [float(v) for v in y]
    if len(z) != len(ys) or any(len(row) != len(xs) for row in z):
        raise ValueError("z must be len(y) x len(x)")
    flat = [float(v) for row in z for v in row]
    z_lo, z_hi = min(flat), max(flat)
    span = (z_hi - z_lo) or 1.0
    plot_w = WIDTH - MARGIN_L - MARGIN_R
    plot_h = HEIGHT - MARGIN_T - MARGIN_B
    cell_w = plot_w / len(xs)
    cell_h = plot_h / len(ys)

    def to_px(px, py):
        fx = (px - xs[0]) / ((xs[-1] - xs[0]) or 1.0)
        fy = (py - ys[0]) / ((ys[-1] - ys[0]) or 1.0)
        return MARGIN_L + fx * plot_w, HEIGHT - MARGIN_B - fy * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    for iy, row in enumerate(z):
        py = HEIGHT - MARGIN_B - (iy + 1) * cell_h
        for ix, val in enumerate(row):
            px = MARGIN_L + ix * cell_w
            parts.append(
                f'<rect x="{_fmt(px)}" y="{_fmt(py)}" width="{_fmt(cell_w + 0.5)}" '
                f'height="{_fmt(cell_h + 0.5)}" fill="{_color((float(val) - z_lo) / span)}"/>'
            )
    _axes(parts, xs[0], xs[-1], ys[0], ys[-1], x_label, y_label, to_px)
    # color bar
    bar_x = WIDTH - MARGIN_R + 30
    steps = 40
    for i in range(steps):
        frac = i / (steps - 1)
        by = HEIGHT - MARGIN_B - (i + 1) * plot_h / steps
        parts.append(
            f'<rect x="{bar_x}" y="{_fmt(by)}" width="18" height="{_fmt(plot_h / steps + 0.5)}" '
            f'fill="{_color(frac)}"/>'
        )
    parts.append(f'<text x="{bar_x}" y="{MARGIN_T - 8}" font-size="11">{z_label}</text>')
    parts.append(f'<text x="{bar_x + 24}" y="{HEIGHT - MARGIN_B}" font-size="10">{_fmt(z_lo)}</text>')
    parts.append(f'<text x="{bar_x + 24}" y="{MARGIN_T + 10}" font-size="10">{_fmt(z_hi)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
