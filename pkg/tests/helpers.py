"""Shared fixtures, configuration generators and brute-force oracles for the tests."""
from __future__ import annotations

import json
import random
from functools import lru_cache
from pathlib import Path
from typing import Iterator, Optional

from gmpy2 import mpq

from beacon_route import io
from beacon_route.cli import corpus_plan
from beacon_route.decomposition import (
    Size,
    classify_neighbor,
    dual_tree,
    is_tall_neighbor,
    modified_center,
    s_star,
    side_neighbors,
    side_of,
    vertical_decomposition,
)
from beacon_route.geometry import (
    Containment,
    OrthoPolygon,
    Point,
    Rect,
    generate_random_orthogonal,
    rectangular_hull,
)
from beacon_route.synthesis import synthesize

FIXTURES = Path(__file__).parent / "fixtures"


def load_fixture(name: str) -> OrthoPolygon:
    return io.load_polygon(FIXTURES / f"{name}.json")


def case_fixtures() -> list[tuple[str, dict]]:
    out = []
    for p in sorted((FIXTURES / "cases").glob("*.json")):
        out.append((p.stem, json.loads(p.read_text())))
    return out


def fixture_names() -> list[str]:
    return sorted(p.stem for p in FIXTURES.glob("*.json"))


@lru_cache(maxsize=None)
def corpus(count: int = 100, seed: int = 7, max_n: int = 40) -> tuple[OrthoPolygon, ...]:
    return tuple(generate_random_orthogonal(n, s) for s, n in corpus_plan(count, seed, max_n))


@lru_cache(maxsize=None)
def decomposition_of(poly: OrthoPolygon):
    return vertical_decomposition(poly)


# --------------------------------------------------------------------------
# sampling


def dyadic(rng: random.Random, lo, hi, bits: int = 16):
    den = 1 << bits
    return lo + (hi - lo) * mpq(rng.randrange(0, den + 1), den)


def closed_rect_points(r: Rect, rng: random.Random, count: int) -> list[Point]:
    """Corners, edge midpoints and the center first, then dyadic points of the closed rectangle."""
    c = r.center
    fixed = list(r.corners()) + [
        Point(c.x, r.lo.y), Point(c.x, r.hi.y), Point(r.lo.x, c.y), Point(r.hi.x, c.y), c,
    ]
    out = fixed[:count]
    while len(out) < count:
        out.append(Point(dyadic(rng, r.lo.x, r.hi.x), dyadic(rng, r.lo.y, r.hi.y)))
    return out


def region_points(region, rng: random.Random, count: int) -> list[Point]:
    pts = [p for p in closed_rect_points(region.rect, rng, count + len(region.excluded))
           if p not in region.excluded]
    return pts[:count]


def polygon_points(poly: OrthoPolygon, rng: random.Random, count: int) -> list[Point]:
    """Closed-polygon points: vertices mixed with dyadic samples from random decomposition rectangles."""
    d = decomposition_of(poly)
    out: list[Point] = []
    while len(out) < count:
        if rng.random() < 0.1:
            out.append(poly.vertices[rng.randrange(poly.n)])
        else:
            r = d.rects[rng.randrange(len(d.rects))]
            out.append(Point(dyadic(rng, r.lo.x, r.hi.x, 8), dyadic(rng, r.lo.y, r.hi.y, 8)))
    return out


# --------------------------------------------------------------------------
# coverage configurations


def solo_configs(polys) -> Iterator[tuple[OrthoPolygon, object, int, int]]:
    """(poly, d, R, S) with S a solo short neighbour of R."""
    for poly in polys:
        d = decomposition_of(poly)
        for R, nbrs in dual_tree(d).items():
            for S in nbrs:
                if classify_neighbor(d, R, S).size is Size.SOLO:
                    yield poly, d, R, S


def paired_configs(polys):
    """(poly, d, R, side) with paired neighbours of R on ``side``."""
    for poly in polys:
        d = decomposition_of(poly)
        for R in range(len(d.rects)):
            for S in d.neighbors[R]:
                side = side_of(d, R, S)
                nb = side_neighbors(d, R, side)
                if classify_neighbor(d, R, S).size is Size.PAIRED and S == min(nb):
                    yield poly, d, R, side


def segment_on_boundary(poly: OrthoPolygon, a: Point, b: Point) -> bool:
    idx = poly.index
    if a.y == b.y:
        cuts = sorted({a.x, b.x, *[x for x in idx.xs if min(a.x, b.x) < x < max(a.x, b.x)]})
        pts = [Point(x, a.y) for x in cuts] + [Point((u + v) / 2, a.y) for u, v in zip(cuts, cuts[1:])]
    else:
        cuts = sorted({a.y, b.y, *[y for y in idx.ys if min(a.y, b.y) < y < max(a.y, b.y)]})
        pts = [Point(a.x, y) for y in cuts] + [Point(a.x, (u + v) / 2) for u, v in zip(cuts, cuts[1:])]
    return all(idx.classify(p) is Containment.BOUNDARY for p in pts)


def leaf_configs(polys, rng: random.Random, tall: bool, tries: int = 60):
    """(poly, d, R, S, b) with S a leaf, solo (or tall) neighbour of R, and RH(R + b) inside P.

    For tall leaves the two edges at the reflex vertex of RH(R + b) + S must
    also lie on the boundary of P.
    """
    for poly in polys:
        d = decomposition_of(poly)
        adj = dual_tree(d)
        for S, nb in adj.items():
            if len(nb) != 1:
                continue
            (R,) = nb
            if is_tall_neighbor(d, R, S) != tall:
                continue
            if not tall and classify_neighbor(d, R, S).size is not Size.SOLO:
                continue
            for b in polygon_points(poly, rng, tries):
                H = rectangular_hull([d.rects[R].lo, d.rects[R].hi, b])
                if not poly.index.rect_inside(H):
                    continue
                if H.contains_rect(d.rects[S]) and H != d.rects[R]:
                    continue
                if tall and not _tall_leaf_edges_ok(poly, d, H, S):
                    continue
                yield poly, d, R, S, b
                break


def _tall_leaf_edges_ok(poly, d, H: Rect, S: int) -> bool:
    s = d.rects[S]
    x = s.lo.x if s.lo.x >= H.hi.x else s.hi.x
    if not (s.lo.x == H.hi.x or s.hi.x == H.lo.x):
        return False
    far = H.lo.x if x == H.hi.x else H.hi.x
    if H.lo.y == s.lo.y and H.hi.y < s.hi.y:
        r = Point(x, H.hi.y)
        return segment_on_boundary(poly, Point(far, r.y), r) and segment_on_boundary(poly, r, Point(x, s.hi.y))
    if H.hi.y == s.hi.y and H.lo.y > s.lo.y:
        r = Point(x, H.lo.y)
        return segment_on_boundary(poly, Point(far, r.y), r) and segment_on_boundary(poly, r, Point(x, s.lo.y))
    return False


# --------------------------------------------------------------------------
# oracles


def winding_oracle(poly: OrthoPolygon, p: Point) -> Containment:
    """Independent classification: explicit on-segment test, then the winding number."""
    vs = poly.vertices
    n = len(vs)
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        if min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y):
            if (b.x - a.x) * (p.y - a.y) == (b.y - a.y) * (p.x - a.x):
                return Containment.BOUNDARY
    w = 0
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        side = (b.x - a.x) * (p.y - a.y) - (p.x - a.x) * (b.y - a.y)
        if a.y <= p.y < b.y and side > 0:
            w += 1
        elif b.y <= p.y < a.y and side < 0:
            w -= 1
    return Containment.INTERIOR if w else Containment.EXTERIOR


def grid_staircase_oracle(poly: OrthoPolygon, p: Point, q: Point) -> bool:
    """Exhaustive monotone search on the full grid of vertex and query coordinates."""
    xs = sorted({*(v.x for v in poly.vertices), p.x, q.x})
    ys = sorted({*(v.y for v in poly.vertices), p.y, q.y})

    def inside(pt: Point) -> bool:
        return winding_oracle(poly, pt) is not Containment.EXTERIOR

    def seg_ok(a: Point, b: Point) -> bool:
        return inside(a) and inside(b) and inside(Point((a.x + b.x) / 2, (a.y + b.y) / 2))

    sx = 1 if q.x >= p.x else -1
    sy = 1 if q.y >= p.y else -1
    gx = [x for x in xs if min(p.x, q.x) <= x <= max(p.x, q.x)][::sx]
    gy = [y for y in ys if min(p.y, q.y) <= y <= max(p.y, q.y)][::sy]
    if not inside(p) or not inside(q):
        return False
    reach = {(0, 0)}
    for i in range(len(gx)):
        for j in range(len(gy)):
            if (i, j) == (0, 0):
                continue
            here = Point(gx[i], gy[j])
            ok = (i > 0 and (i - 1, j) in reach and seg_ok(Point(gx[i - 1], gy[j]), here)) or \
                 (j > 0 and (i, j - 1) in reach and seg_ok(Point(gx[i], gy[j - 1]), here))
            if ok:
                reach.add((i, j))
    return (len(gx) - 1, len(gy) - 1) in reach


def monotone(vals) -> bool:
    vals = list(vals)
    return all(a <= b for a, b in zip(vals, vals[1:])) or all(a >= b for a, b in zip(vals, vals[1:]))


def sq_dist(a: Point, b: Point):
    return (a.x - b.x) ** 2 + (a.y - b.y) ** 2


def first(it, default: Optional[object] = None):
    return next(iter(it), default)


# --------------------------------------------------------------------------
# acceptance bookkeeping

ACCEPTANCE_LINES: list[str] = []


@lru_cache(maxsize=None)
def synthesized(poly: OrthoPolygon):
    return synthesize(poly)
