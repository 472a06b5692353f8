"""Arc diagrams of queue layouts.

Vertices sit on a horizontal baseline in layout order and every edge is a
semicircle above it, stroked in its queue's colour.
"""

from __future__ import annotations

from typing import Optional
from xml.sax.saxutils import escape

from .errors import InvalidLayout
from .graph_core import SimpleGraph, norm_edge
from .verify import QueueLayout, is_valid_queue_layout

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd")
STEP = 40
MARGIN = 30


def arc_diagram(g: SimpleGraph, layout: QueueLayout, label_by_position: bool = False,
                max_queues: Optional[int] = None) -> str:
    """SVG text for ``layout``; raises ``InvalidLayout`` unless it verifies."""
    k = max_queues if max_queues is not None else len(PALETTE)
    report = is_valid_queue_layout(g, layout, k)
    if not report:
        raise InvalidLayout(report.reason)
    pos = layout.positions()
    n = len(layout.order)
    width = 2 * MARGIN + STEP * max(n - 1, 0)
    span = STEP * max(n - 1, 1)
    base_y = MARGIN + span // 2 + 10
    legend_y = base_y + 40
    height = legend_y + 20
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<g id="arcs" fill="none" stroke-width="1.5">',
    ]
    for e, q in sorted((norm_edge(*e), q) for e, q in layout.queue_of.items()):
        a, b = sorted((pos[e[0]], pos[e[1]]))
        x1, x2 = MARGIN + STEP * a, MARGIN + STEP * b
        r = (x2 - x1) / 2
        colour = PALETTE[q % len(PALETTE)]
        out.append(f'<path class="arc q{q}" data-edge="{e[0]} {e[1]}" stroke="{colour}" '
                   f'd="M {x1} {base_y} A {r:g} {r:g} 0 0 1 {x2} {base_y}"/>')
    out.append("</g>")
    out.append('<g id="vertices" font-family="sans-serif" font-size="11" text-anchor="middle">')
    for i, v in enumerate(layout.order):
        x = MARGIN + STEP * i
        label = i if label_by_position else v
        out.append(f'<circle class="vertex" data-id="{v}" cx="{x}" cy="{base_y}" r="4" fill="black"/>')
        out.append(f'<text x="{x}" y="{base_y + 16}">{escape(str(label))}</text>')
    out.append("</g>")
    out.append('<g id="legend" font-family="sans-serif" font-size="11">')
    for j, q in enumerate(sorted(set(layout.queue_of.values()))):
        x = MARGIN + 80 * j
        out.append(f'<rect x="{x}" y="{legend_y - 8}" width="10" height="10" fill="{PALETTE[q % len(PALETTE)]}"/>')
        out.append(f'<text x="{x + 14}" y="{legend_y + 1}">queue {q}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
