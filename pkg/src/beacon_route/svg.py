"""Deterministic SVG rendering of polygons, decompositions, beacons and paths.

Display only: coordinates are rounded to fixed precision here and never
read back.  When a scene spans many orders of magnitude (spirals) the axes
are warped monotonically so that every vertex stays distinguishable.
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .attraction import AttractionPath
from .decomposition import Decomposition
from .geometry import OrthoPolygon, Point

SIZE = 800.0
PAD = 20.0
DOT = 4.0
WARP_RATIO = 10_000


@dataclass
class Scene:
    poly: OrthoPolygon
    decomposition: Optional[Decomposition] = None
    shaded: Sequence[int] = ()               # rectangle ids drawn as removed
    beacons: Sequence[Point] = ()
    paths: Sequence[AttractionPath] = ()
    markers: Sequence[Point] = ()            # e.g. repair positions, drawn as rings
    title: str = ""


class _Axis:
    def __init__(self, vals: Sequence, warp: bool):
        self.vals = sorted(set(vals))
        self.lo, self.hi = self.vals[0], self.vals[-1]
        self.warp = warp and len(self.vals) > 1

    def __call__(self, v) -> float:
        if self.hi == self.lo:
            return 0.5
        if not self.warp:
            return float((v - self.lo) / (self.hi - self.lo))
        # piecewise-linear between consecutive distinct coordinates, equal spacing
        k = bisect_left(self.vals, v)
        if k < len(self.vals) and self.vals[k] == v:
            return k / (len(self.vals) - 1)
        a, b = self.vals[k - 1], self.vals[k]
        return float((k - 1 + (v - a) / (b - a)) / (len(self.vals) - 1))


def _needs_warp(vals) -> bool:
    s = sorted(set(vals))
    if len(s) < 3:
        return False
    gap = min(b - a for a, b in zip(s, s[1:]))
    return (s[-1] - s[0]) / gap > WARP_RATIO


def render(scene: Scene) -> str:
    vs = scene.poly.vertices
    xs = [v.x for v in vs]
    ys = [v.y for v in vs]
    warp = _needs_warp(xs) or _needs_warp(ys)
    ax, ay = _Axis(xs, warp), _Axis(ys, warp)
    inner = SIZE - 2 * PAD

    def P(p: Point) -> tuple[str, str]:
        return f"{PAD + inner * ax(p.x):.3f}", f"{PAD + inner * (1 - ay(p.y)):.3f}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE:.0f}" height="{SIZE:.0f}" '
        f'viewBox="0 0 {SIZE:.0f} {SIZE:.0f}">',
    ]
    if scene.title:
        out.append(f"<title>{_esc(scene.title)}</title>")
    if warp:
        out.append("<desc>axes warped to rank order for display</desc>")
    pts = " ".join(",".join(P(v)) for v in vs)
    out.append(f'<polygon class="polygon" points="{pts}" fill="#f4f4f4" stroke="#000" stroke-width="2"/>')
    d = scene.decomposition
    if d is not None:
        shaded = set(scene.shaded)
        for i, r in enumerate(d.rects):
            (x0, y1), (x1, y0) = P(r.lo), P(r.hi)
            fill = "#c8c8c8" if i in shaded else "none"
            out.append(
                f'<rect class="rect" data-id="{i}" x="{x0}" y="{y0}" '
                f'width="{float(x1) - float(x0):.3f}" height="{float(y1) - float(y0):.3f}" '
                f'fill="{fill}" stroke="#888" stroke-width="0.5"/>'
            )
        for c in d.verticals:
            (xa, ya), (xb, yb) = P(Point(c.x, c.y_lo)), P(Point(c.x, c.y_hi))
            out.append(f'<line class="vertical" x1="{xa}" y1="{ya}" x2="{xb}" y2="{yb}" '
                       f'stroke="#36c" stroke-dasharray="4 3"/>')
    for path in scene.paths:
        pts = " ".join(",".join(P(p)) for p in path.points)
        colour = "#2a2" if path.reached else "#c22"
        out.append(f'<polyline class="path" points="{pts}" fill="none" stroke="{colour}" stroke-width="1.5"/>')
    for m in scene.markers:
        x, y = P(m)
        out.append(f'<circle class="marker" cx="{x}" cy="{y}" r="{2 * DOT:.1f}" fill="none" stroke="#a0a"/>')
    for b in scene.beacons:
        x, y = P(b)
        out.append(f'<circle class="beacon" cx="{x}" cy="{y}" r="{DOT:.1f}" fill="#1a9a1a"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(scene: Scene, path: str | Path) -> None:
    Path(path).write_text(render(scene), encoding="utf-8")


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
