"""Plot data for 1-d and 2-d regions: labelled CSV plus a hand-written SVG.

The SVG is assembled from fixed-precision strings so the bytes depend only on
the region (and optional overlays), never on a plotting backend.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .geometry import GeometryError, GridRegion, Label

WIDTH = 640
MARGIN = 40
FILL = "#3b6ea5"
GAMMA = "#c0392b"


def _f(x: float) -> str:
    return f"{x:.3f}"


def _header(width: int, height: int) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        "<defs>",
        '<pattern id="hatch" patternUnits="userSpaceOnUse" width="6" height="6" patternTransform="rotate(45)">',
        f'<line x1="0" y1="0" x2="0" y2="6" stroke="{FILL}" stroke-width="2"/>',
        "</pattern>",
        "</defs>",
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]


def _legend(y: float, has_gamma: bool) -> list[str]:
    items = [("in", f'fill="{FILL}"'), ("uncertain", 'fill="url(#hatch)" stroke="#888"')]
    out = []
    x = MARGIN
    for text, style in items:
        out.append(f'<rect x="{x}" y="{_f(y)}" width="12" height="12" {style}/>')
        out.append(f'<text x="{x + 18}" y="{_f(y + 11)}" font-family="sans-serif" font-size="12">{text}</text>')
        x += 110
    if has_gamma:
        out.append(f'<circle cx="{x + 6}" cy="{_f(y + 6)}" r="3" fill="{GAMMA}"/>')
        out.append(f'<text x="{x + 18}" y="{_f(y + 11)}" font-family="sans-serif" font-size="12">cluster set</text>')
    return out


def region_svg(region: GridRegion, gamma=None, polygon=None) -> str:
    """SVG text for a region on a 1-d or 2-d grid.

    ``gamma`` overlays cluster points as dots; ``polygon`` (2-d) outlines a
    convex set such as the core.
    """
    grid = region.grid
    k = grid.dimension
    if k > 2:
        raise GeometryError("plots limited to k <= 2")
    box = grid.box()
    lo, hi = box.lo, box.hi
    span = np.maximum(hi - lo, grid.h)
    inner = WIDTH - 2 * MARGIN
    scale = inner / float(span.max())
    if k == 1:
        plot_h = 60
    else:
        plot_h = int(np.ceil(span[1] * scale))
    height = plot_h + 2 * MARGIN + 30
    lines = _header(WIDTH, height)

    def px(x):
        return MARGIN + (x - lo[0]) * scale

    def py(y):
        return MARGIN + plot_h - (y - lo[1]) * scale

    lab = region.labels.ravel()
    centers = grid.centers()
    cell = grid.h * scale
    if k == 1:
        base = MARGIN + plot_h / 2
        lines.append(f'<line x1="{_f(px(lo[0]))}" y1="{_f(base)}" x2="{_f(px(hi[0]))}" y2="{_f(base)}" '
                     'stroke="#444" stroke-width="1"/>')
        for c, l in zip(centers[:, 0], lab):
            if l == Label.OUT:
                continue
            fill = f'fill="{FILL}"' if l == Label.IN else 'fill="url(#hatch)"'
            lines.append(f'<rect x="{_f(px(c) - cell / 2)}" y="{_f(base - 10)}" width="{_f(cell)}" '
                         f'height="20" {fill}/>')
        for j, x in enumerate((lo[0], hi[0])):
            anchor = "start" if j == 0 else "end"
            lines.append(f'<text x="{_f(px(x))}" y="{_f(base + 30)}" font-family="sans-serif" font-size="11" '
                         f'text-anchor="{anchor}">{x:.4g}</text>')
        if gamma is not None:
            for g in np.atleast_2d(gamma)[:, 0]:
                lines.append(f'<circle cx="{_f(px(g))}" cy="{_f(base)}" r="2" fill="{GAMMA}"/>')
    else:
        lines.append(f'<rect x="{MARGIN}" y="{MARGIN}" width="{_f(span[0] * scale)}" height="{plot_h}" '
                     'fill="none" stroke="#444"/>')
        for c, l in zip(centers, lab):
            if l == Label.OUT:
                continue
            fill = f'fill="{FILL}"' if l == Label.IN else 'fill="url(#hatch)"'
            lines.append(f'<rect x="{_f(px(c[0]) - cell / 2)}" y="{_f(py(c[1]) - cell / 2)}" '
                         f'width="{_f(cell)}" height="{_f(cell)}" {fill}/>')
        if polygon is not None and len(polygon):
            pts = " ".join(f"{_f(px(x))},{_f(py(y))}" for x, y in np.atleast_2d(polygon))
            lines.append(f'<polygon points="{pts}" fill="none" stroke="{GAMMA}" stroke-width="1.5"/>')
        if gamma is not None:
            for g in np.atleast_2d(gamma):
                lines.append(f'<circle cx="{_f(px(g[0]))}" cy="{_f(py(g[1]))}" r="2" fill="{GAMMA}"/>')
    if not np.any(lab != Label.OUT):
        lines.append(f'<text x="{WIDTH // 2}" y="{_f(MARGIN + plot_h / 2)}" font-family="sans-serif" '
                     'font-size="14" text-anchor="middle">empty region</text>')
    lines += _legend(MARGIN + plot_h + 18, gamma is not None)
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def emit_plot_data(region: GridRegion, path, gamma=None, polygon=None) -> tuple[Path, Path]:
    """Write ``<path>.csv`` (labelled nodes) and ``<path>.svg``; returns both paths."""
    if region.grid.dimension > 2:
        raise GeometryError("plots limited to k <= 2")
    stem = Path(path)
    csv_path, svg_path = stem.with_suffix(".csv"), stem.with_suffix(".svg")
    csv_path.write_text(region.to_csv())
    svg_path.write_text(region_svg(region, gamma, polygon))
    return csv_path, svg_path
