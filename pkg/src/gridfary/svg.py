"""SVG rendering of drawings. Presentation only; the JSON is authoritative."""
from __future__ import annotations

from xml.sax.saxutils import escape

from .embedder import Drawing

__all__ = ["to_svg"]

CANVAS = 1024
MARGIN = 40
MAX_RULES = 64


def _rule_step(span: int) -> int:
    # smallest 1, 2, 5 x 10^k step that keeps the ruling sparse
    step = 1
    while span // step > MAX_RULES:
        for f in (2, 5 / 2, 2):
            step = int(step * f)
            if span // step <= MAX_RULES:
                break
    return step


def to_svg(d: Drawing, labels: bool = True) -> str:
    """Render ``d`` with grid ruling, vertex dots and edge-length labels.

    The longest bounding-box side is scaled to 1024 units. Every vertex
    carries a ``<title>`` with its original integer coordinates.
    """
    x0, y0, x1, y1 = d.bbox
    span = max(x1 - x0, y1 - y0, 1)
    k = CANVAS / span
    w = (x1 - x0) * k + 2 * MARGIN
    h = (y1 - y0) * k + 2 * MARGIN

    def sx(x: int) -> float:
        return MARGIN + (x - x0) * k

    def sy(y: int) -> float:
        return MARGIN + (y1 - y) * k

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.1f}" height="{h:.1f}" '
        f'viewBox="0 0 {w:.1f} {h:.1f}">',
        f"<desc>{escape(d.algorithm)} drawing, bbox {list(d.bbox)}, scale {k:.6g} per unit</desc>",
        '<g stroke="#ddd" stroke-width="0.5">',
    ]
    step = _rule_step(span)
    for x in range(x0 - x0 % step, x1 + 1, step):
        out.append(f'<line x1="{sx(x):.2f}" y1="{sy(y0):.2f}" x2="{sx(x):.2f}" y2="{sy(y1):.2f}"/>')
    for y in range(y0 - y0 % step, y1 + 1, step):
        out.append(f'<line x1="{sx(x0):.2f}" y1="{sy(y):.2f}" x2="{sx(x1):.2f}" y2="{sy(y):.2f}"/>')
    out.append("</g>")

    out.append('<g stroke="#222" stroke-width="1.5">')
    for e in d.edges:
        (ax, ay), (bx, by) = d.positions[e.u], d.positions[e.v]
        out.append(f'<line x1="{sx(ax):.2f}" y1="{sy(ay):.2f}" x2="{sx(bx):.2f}" y2="{sy(by):.2f}"/>')
    out.append("</g>")

    if labels:
        out.append('<g font-family="monospace" font-size="10" fill="#a33">')
        for e in d.edges:
            (ax, ay), (bx, by) = d.positions[e.u], d.positions[e.v]
            out.append(f'<text x="{(sx(ax) + sx(bx)) / 2:.2f}" y="{(sy(ay) + sy(by)) / 2:.2f}">{e.length}</text>')
        out.append("</g>")

    out.append('<g fill="#1f5fbf">')
    for v, (x, y) in sorted(d.positions.items()):
        out.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="3"><title>{v}: ({x}, {y})</title></circle>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
