"""Minimal SVG bar chart with optional overlay polylines."""

from __future__ import annotations

from typing import Sequence
from xml.sax.saxutils import escape

COLORS = {"normal_pdf_scaled": "#d62728", "ih_pdf_scaled": "#1f77b4"}


def bar_chart(
    xs: Sequence[int],
    counts: Sequence[float],
    overlays: dict[str, Sequence[float | str]] | None = None,
    *,
    title: str = "",
    width: int = 800,
    height: int = 400,
) -> str:
    margin = 40
    plot_w, plot_h = width - 2 * margin, height - 2 * margin
    overlays = overlays or {}
    values = [float(c) for c in counts]
    for ys in overlays.values():
        values += [float(y) for y in ys if y != ""]
    top = max(values, default=1.0) or 1.0
    lo, hi = (min(xs), max(xs)) if xs else (0, 1)
    span = max(hi - lo, 1)
    bar_w = plot_w / (span + 1)

    def px(x: float) -> float:
        return margin + (x - lo) * plot_w / span if span else margin + plot_w / 2

    def py(y: float) -> float:
        return height - margin - y * plot_h / top

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<text x="{width / 2:.1f}" y="{margin / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{escape(title)}</text>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}" stroke="black"/>',
    ]
    for x, c in zip(xs, values):
        y = py(c)
        out.append(
            f'<rect x="{px(x) - bar_w / 2:.2f}" y="{y:.2f}" width="{bar_w:.2f}" '
            f'height="{height - margin - y:.2f}" fill="#bbbbbb"/>'
        )
    for name, ys in overlays.items():
        pts = " ".join(f"{px(x):.2f},{py(float(y)):.2f}" for x, y in zip(xs, ys) if y != "")
        if pts:
            color = COLORS.get(name, "#2ca02c")
            out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>')
    for x in (lo, hi):
        out.append(
            f'<text x="{px(x):.1f}" y="{height - margin + 16}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{x}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
