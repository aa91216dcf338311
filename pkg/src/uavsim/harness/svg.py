"""Tiny native SVG line-chart renderer (polylines, axes, legend).

Deliberately dependency-free so reports render the same everywhere;
coordinates are formatted to fixed precision for byte-stable output.
"""

import math
from xml.sax.saxutils import escape

PALETTE = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#ff7f0e",
    "#9467bd",
    "#8c564b",
    "#17becf",
    "#7f7f7f",
)

WIDTH = 640
HEIGHT = 420
MARGIN_L = 64
MARGIN_R = 24
MARGIN_T = 40
MARGIN_B = 52


def _nice_ticks(lo, hi, target=5):
    if not (math.isfinite(lo) and math.isfinite(hi)):
        lo, hi = 0.0, 1.0
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / target
    mag = 10 ** math.floor(math.log10(raw))
    for mult in (1, 2, 2.5, 5, 10):
        if raw <= mult * mag:
            step = mult * mag
            break
    start = math.floor(lo / step) * step
    ticks = []
    v = start
    while v <= hi + step * 1e-9:
        if v >= lo - step * 1e-9:
            ticks.append(round(v, 10))
        v += step
    return ticks


def _fmt(v):
    return f"{v:.2f}"


def _tick_label(v):
    if abs(v - round(v)) < 1e-9 and abs(v) < 1e7:
        return str(int(round(v)))
    return f"{v:g}"


def line_chart(series, title="", xlabel="", ylabel=""):
    """Render labelled (xs, ys) series to an SVG string.

    ``series`` is a list of (label, xs, ys) triples. Non-finite y values are
    skipped point-wise.
    """
    points = []
    for _, xs, ys in series:
        points.extend(
            (x, y) for x, y in zip(xs, ys) if math.isfinite(x) and math.isfinite(y)
        )
    if points:
        xlo = min(p[0] for p in points)
        xhi = max(p[0] for p in points)
        ylo = min(p[1] for p in points)
        yhi = max(p[1] for p in points)
    else:
        xlo, xhi, ylo, yhi = 0.0, 1.0, 0.0, 1.0
    if xhi - xlo < 1e-12:
        xhi = xlo + 1.0
    if yhi - ylo < 1e-12:
        yhi = ylo + 1.0
    pad = 0.04 * (yhi - ylo)
    ylo -= pad
    yhi += pad

    plot_w = WIDTH - MARGIN_L - MARGIN_R
    plot_h = HEIGHT - MARGIN_T - MARGIN_B

    def sx(x):
        return MARGIN_L + plot_w * (x - xlo) / (xhi - xlo)

    def sy(y):
        return MARGIN_T + plot_h * (1.0 - (y - ylo) / (yhi - ylo))

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        parts.append(
            f'<text x="{WIDTH / 2:.1f}" y="22" text-anchor="middle" '
            f'font-family="sans-serif" font-size="15">{escape(title)}</text>'
        )

    for tick in _nice_ticks(xlo, xhi):
        if not xlo <= tick <= xhi:
            continue
        x = sx(tick)
        parts.append(
            f'<line x1="{_fmt(x)}" y1="{MARGIN_T}" x2="{_fmt(x)}" '
            f'y2="{HEIGHT - MARGIN_B}" stroke="#dddddd" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_fmt(x)}" y="{HEIGHT - MARGIN_B + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{escape(_tick_label(tick))}</text>'
        )
    for tick in _nice_ticks(ylo, yhi):
        if not ylo <= tick <= yhi:
            continue
        y = sy(tick)
        parts.append(
            f'<line x1="{MARGIN_L}" y1="{_fmt(y)}" x2="{WIDTH - MARGIN_R}" '
            f'y2="{_fmt(y)}" stroke="#dddddd" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{MARGIN_L - 8}" y="{_fmt(y + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{escape(_tick_label(tick))}</text>'
        )

    # axes
    parts.append(
        f'<line x1="{MARGIN_L}" y1="{MARGIN_T}" x2="{MARGIN_L}" '
        f'y2="{HEIGHT - MARGIN_B}" stroke="black" stroke-width="1.5"/>'
    )
    parts.append(
        f'<line x1="{MARGIN_L}" y1="{HEIGHT - MARGIN_B}" x2="{WIDTH - MARGIN_R}" '
        f'y2="{HEIGHT - MARGIN_B}" stroke="black" stroke-width="1.5"/>'
    )
    if xlabel:
        parts.append(
            f'<text x="{(MARGIN_L + WIDTH - MARGIN_R) / 2:.1f}" y="{HEIGHT - 14}" '
            f'text-anchor="middle" font-family="sans-serif" font-size="12">'
            f"{escape(xlabel)}</text>"
        )
    if ylabel:
        cx, cy = 18, (MARGIN_T + HEIGHT - MARGIN_B) / 2
        parts.append(
            f'<text x="{cx}" y="{cy:.1f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12" '
            f'transform="rotate(-90 {cx} {cy:.1f})">{escape(ylabel)}</text>'
        )

    for idx, (label, xs, ys) in enumerate(series):
        color = PALETTE[idx % len(PALETTE)]
        coords = [
            f"{_fmt(sx(x))},{_fmt(sy(y))}"
            for x, y in zip(xs, ys)
            if math.isfinite(x) and math.isfinite(y)
        ]
        if coords:
            parts.append(
                f'<polyline fill="none" stroke="{color}" stroke-width="1.8" '
                f'points="{" ".join(coords)}"/>'
            )
        ly = MARGIN_T + 16 * idx + 6
        lx = WIDTH - MARGIN_R - 150
        parts.append(
            f'<line x1="{lx}" y1="{ly}" x2="{lx + 22}" y2="{ly}" '
            f'stroke="{color}" stroke-width="2.5"/>'
        )
        parts.append(
            f'<text x="{lx + 28}" y="{ly + 4}" font-family="sans-serif" '
            f'font-size="11">{escape(str(label))}</text>'
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
