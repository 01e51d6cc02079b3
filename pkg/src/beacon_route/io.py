"""Lossless JSON interchange for rationals, points, polygons and results.

A rational is written as ``[num, den]`` inside a point as ``[xn, xd, yn, yd]``;
a point may also be ``[x, y]`` with plain integers.
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any, Iterable, Sequence

from gmpy2 import mpq

from .attraction import AttractionPath
from .decomposition import Decomposition, classify_neighbor, dual_tree
from .geometry import GeometryError, OrthoPolygon, Point, Rect, validate_polygon
from .synthesis import BeaconSet, BudgetReport, ReductionStep


class FormatError(GeometryError):
    pass


def _int(v) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise FormatError(f"expected an integer, got {v!r}")
    return v


def parse_point(raw) -> Point:
    if not isinstance(raw, (list, tuple)):
        raise FormatError(f"point must be a list, got {raw!r}")
    if len(raw) == 2:
        return Point(mpq(_int(raw[0])), mpq(_int(raw[1])))
    if len(raw) == 4:
        xn, xd, yn, yd = (_int(v) for v in raw)
        if xd == 0 or yd == 0:
            raise FormatError("zero denominator")
        return Point(mpq(xn, xd), mpq(yn, yd))
    raise FormatError(f"point needs 2 or 4 integers, got {len(raw)}")


def dump_point(p: Point) -> list[int]:
    return [int(p.x.numerator), int(p.x.denominator), int(p.y.numerator), int(p.y.denominator)]


def dump_q(v) -> list[int]:
    v = mpq(v)
    return [int(v.numerator), int(v.denominator)]


def parse_points(raw: Iterable) -> list[Point]:
    return [parse_point(r) for r in raw]


def parse_polygon_doc(doc: Any, require_general_position: bool = True) -> OrthoPolygon:
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise FormatError('polygon document needs a "vertices" list')
    return validate_polygon(parse_points(doc["vertices"]), require_general_position)


def polygon_doc(poly: OrthoPolygon) -> dict:
    return {"vertices": [dump_point(v) for v in poly.vertices]}


def load_json(path: str | Path) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def load_polygon(path: str | Path, require_general_position: bool = True) -> OrthoPolygon:
    return parse_polygon_doc(load_json(path), require_general_position)


def load_beacons(path: str | Path) -> list[Point]:
    doc = load_json(path)
    if isinstance(doc, dict):
        doc = doc.get("beacons", [])
    return parse_points(doc)


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def write_json(obj: Any, path: str | Path | None) -> str:
    text = dumps(obj)
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


# --------------------------------------------------------------------------
# result documents


def rect_doc(r: Rect) -> dict:
    return {"lo": dump_point(r.lo), "hi": dump_point(r.hi)}


def decomposition_doc(d: Decomposition) -> dict:
    adj = dual_tree(d)
    edges = sorted((a, b) for a, nb in adj.items() for b in nb if a < b)
    nbrs = []
    for a, b in edges:
        for R, S in ((a, b), (b, a)):
            rel = classify_neighbor(d, R, S)
            nbrs.append({
                "rect": R, "neighbor": S,
                "side": rel.side.value, "vertical_pos": rel.vertical_pos.value, "size": rel.size.value,
            })
    return {
        "rectangles": [rect_doc(r) for r in d.rects],
        "verticals": [
            {"x": dump_q(c.x), "y_lo": dump_q(c.y_lo), "y_hi": dump_q(c.y_hi),
             "reflex_vertex": dump_point(c.reflex_vertex)}
            for c in d.verticals
        ],
        "dual_tree_edges": [list(e) for e in edges],
        "neighbors": nbrs,
    }


def path_doc(path: AttractionPath) -> dict:
    return {
        "start": dump_point(path.start),
        "beacon": dump_point(path.beacon),
        "events": [
            {"point": dump_point(e.point), "kind": e.kind.value, "edge": e.edge}
            for e in path.events
        ],
        "status": path.terminal.status.value,
        "terminal": dump_point(path.terminal.point),
    }


def step_doc(step: ReductionStep) -> dict:
    return {
        "case": step.case_id,
        "removed": list(step.removed),
        "symmetry": step.symmetry,
        "s": step.s,
        "b": step.b,
        "placed": [
            {"point": dump_point(p.point), "role": p.role.value, "covers": list(p.covers)}
            for p in step.placed
        ],
    }


def synthesis_doc(beacons: BeaconSet, trace: Sequence[ReductionStep], budget: BudgetReport) -> dict:
    return {
        "beacons": [dump_point(b) for b in beacons.beacons],
        "trace": [step_doc(s) for s in trace],
        "budget": {
            "total": budget.total,
            "bound": budget.bound,
            "violations": list(budget.violations),
            "ok": budget.ok,
        },
    }
