"""Deterministic SVG pictures of plane fans and 2D tilings.

Floats appear only here, as drawing coordinates.
"""

from __future__ import annotations

import math

from .errors import UnsupportedError
from .fan import Fan
from .glue import Tiling2D
from .io import Document

SIZE = 400
CENTER = SIZE / 2
RADIUS = 150
PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"]


def _n(x: float) -> str:
    s = f"{x:.2f}"
    return "0.00" if s == "-0.00" else s


def _header(title: str) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f"  <title>{title}</title>",
        '  <rect x="0" y="0" width="400" height="400" fill="white"/>',
    ]


def fan_svg(f: Fan) -> str:
    if f.ambient_dim != 2:
        raise UnsupportedError("only plane fans can be drawn")
    out = _header(f"fan with {f.m} rays")
    out += [
        "  <defs>",
        '    <marker id="head" markerWidth="10" markerHeight="8" refX="9" refY="4" orient="auto">',
        '      <path d="M0,0 L10,4 L0,8 z" fill="black"/>',
        "    </marker>",
        "  </defs>",
        f'  <circle cx="{_n(CENTER)}" cy="{_n(CENTER)}" r="3" fill="black"/>',
    ]
    for i, r in enumerate(f.rays):
        x, y = float(r[0]), float(r[1])
        norm = math.hypot(x, y) or 1.0
        ux, uy = x / norm, y / norm
        ex, ey = CENTER + RADIUS * ux, CENTER - RADIUS * uy
        lx, ly = CENTER + (RADIUS + 22) * ux, CENTER - (RADIUS + 22) * uy
        out.append(
            f'  <line x1="{_n(CENTER)}" y1="{_n(CENTER)}" x2="{_n(ex)}" y2="{_n(ey)}" '
            f'stroke="black" stroke-width="2" marker-end="url(#head)"/>'
        )
        out.append(f'  <text x="{_n(lx)}" y="{_n(ly)}" font-size="14" text-anchor="middle" dominant-baseline="middle">{i}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def tiling_svg(t: Tiling2D) -> str:
    """Vertices on a circle (sorted by id), edges as arcs colored by curve, face labels at corner centroids."""
    verts = t.vertices
    pos = {}
    for k, v in enumerate(verts):
        a = 2 * math.pi * k / max(len(verts), 1) - math.pi / 2
        pos[v] = (CENTER + RADIUS * math.cos(a), CENTER + RADIUS * math.sin(a))
    curves = sorted(t.curves)
    color = {c: PALETTE[i % len(PALETTE)] for i, c in enumerate(curves)}
    out = _header(f"tiling with {len(t.faces)} faces and {len(curves)} curves")
    seen_pairs: dict = {}
    label_at = {}
    for eid in sorted(t.edges):
        e = t.edges[eid]
        a, b = e.ends
        key = tuple(sorted((a, b)))
        k = seen_pairs.get(key, 0)
        seen_pairs[key] = k + 1
        (x1, y1), (x2, y2) = pos[a], pos[b]
        mx, my = (x1 + x2) / 2, (y1 + y2) / 2
        pull = 0.5 + 0.15 * k  # parallel edges bow by different amounts
        cx, cy = mx + (CENTER - mx) * pull, my + (CENTER - my) * pull
        out.append(
            f'  <path d="M{_n(x1)},{_n(y1)} Q{_n(cx)},{_n(cy)} {_n(x2)},{_n(y2)}" fill="none" '
            f'stroke="{color[e.curve]}" stroke-width="2"><title>{eid}</title></path>'
        )
        label_at.setdefault(e.curve, (0.25 * x1 + 0.5 * cx + 0.25 * x2, 0.25 * y1 + 0.5 * cy + 0.25 * y2))
    for v in verts:
        x, y = pos[v]
        out.append(f'  <circle cx="{_n(x)}" cy="{_n(y)}" r="3" fill="black"><title>{v}</title></circle>')
    for c in curves:
        if c in label_at:
            x, y = label_at[c]
            out.append(f'  <text x="{_n(x)}" y="{_n(y)}" font-size="12" fill="{color[c]}" text-anchor="middle">{c}</text>')
    for fid in sorted(t.faces):
        cs = t.faces[fid].corners
        x = sum(pos[v][0] for v in cs) / len(cs)
        y = sum(pos[v][1] for v in cs) / len(cs)
        out.append(f'  <text x="{_n(x)}" y="{_n(y)}" font-size="10" fill="#444444" text-anchor="middle">{fid}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(doc: Document) -> str:
    if doc.kind == "fan":
        return fan_svg(doc.body)
    if doc.kind == "tiling2d":
        return tiling_svg(doc.body)
    raise UnsupportedError(f"cannot draw a {doc.kind} document")


def emit_svg(doc: Document, path) -> None:
    text = render(doc)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
