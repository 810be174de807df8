"""ASCII and SVG pictures of assemblies, north up."""

from __future__ import annotations

from typing import Optional
from xml.sax.saxutils import escape

from .model import Assembly

UNLABELED = "·"
_FILL = {"0": "#f4f1de", "1": "#3d405b", "": "#b8b8b8"}
_MARK = {"a": "#e07a5f", "b": "#81b29a", "c": "#f2cc8f"}


def _assembly(obj) -> Assembly:
    return obj.terminal if hasattr(obj, "terminal") else obj


def to_ascii(obj) -> str:
    """One character per cell: the display label, or a dot for unlabeled tiles."""
    a = _assembly(obj)
    if not a.cells:
        return ""
    x0, y0, x1, y1 = a.bounding_box()
    lines = []
    for y in range(y1, y0 - 1, -1):
        row = []
        for x in range(x0, x1 + 1):
            t = a.tile_at((x, y))
            row.append(" " if t is None else (t.label or UNLABELED))
        lines.append("".join(row).rstrip())
    return "\n".join(lines) + "\n"


def to_svg(obj, geometry: Optional[dict] = None, cell: int = 12) -> str:
    """Unit squares colored by label; geometry outlines A, B and output cells."""
    a = _assembly(obj)
    if not a.cells:
        return '<svg xmlns="http://www.w3.org/2000/svg" width="0" height="0"/>\n'
    x0, y0, x1, y1 = a.bounding_box()
    if geometry:
        for key in _MARK:
            for x, y in geometry.get(key, []):
                x0, x1, y0, y1 = min(x0, x), max(x1, x), min(y0, y), max(y1, y)
    w, h = (x1 - x0 + 1) * cell, (y1 - y0 + 1) * cell
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
           f'viewBox="0 0 {w} {h}">']
    for (x, y), tid in sorted(a.cells.items()):
        label = a.tileset[tid].label
        px, py = (x - x0) * cell, (y1 - y) * cell
        out.append(f'<rect x="{px}" y="{py}" width="{cell}" height="{cell}" '
                   f'fill="{_FILL[label]}" stroke="#555" stroke-width="0.5">'
                   f'<title>{escape(tid)} ({x},{y})</title></rect>')
    if geometry:
        for key, color in _MARK.items():
            for x, y in geometry.get(key, []):
                px, py = (x - x0) * cell, (y1 - y) * cell
                out.append(f'<rect x="{px + 1}" y="{py + 1}" width="{cell - 2}" height="{cell - 2}" '
                           f'fill="none" stroke="{color}" stroke-width="2"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
