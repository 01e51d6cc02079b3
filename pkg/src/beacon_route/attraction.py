"""Motion of a robot toward a single activated beacon, simulated exactly."""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .decomposition import Decomposition, InternalInconsistency
from .geometry import (
    Containment,
    OrthoPolygon,
    Point,
    PointOutsidePolygon,
    Q,
    ZERO,
    dot,
    sign,
)


class MoveKind(Enum):
    STRAIGHT = "straight"
    SLIDE = "slide"


class Status(Enum):
    REACHED = "reached"
    STUCK_PERPENDICULAR = "stuck_perpendicular"
    STUCK_CONVEX_VERTEX = "stuck_convex_vertex"
    INDETERMINATE = "indeterminate"

    @property
    def stuck(self) -> bool:
        return self in (Status.STUCK_PERPENDICULAR, Status.STUCK_CONVEX_VERTEX)


@dataclass(frozen=True)
class Event:
    point: Point
    kind: MoveKind
    edge: Optional[int] = None       # polygon edge index for slides
    direction: Optional[Point] = None


@dataclass(frozen=True)
class TerminalStatus:
    status: Status
    point: Point


@dataclass(frozen=True)
class AttractionPath:
    start: Point
    beacon: Point
    events: tuple[Event, ...]
    terminal: TerminalStatus

    @property
    def reached(self) -> bool:
        return self.terminal.status is Status.REACHED

    @property
    def points(self) -> list[Point]:
        return [self.start] + [e.point for e in self.events]


def _check_inside(poly: OrthoPolygon, *pts: Point) -> None:
    for p in pts:
        if poly.index.classify(p) is Containment.EXTERIOR:
            raise PointOutsidePolygon(f"{p} lies outside the polygon")


def attraction_path(poly: OrthoPolygon, p: Point, q: Point) -> AttractionPath:
    """Trajectory of a robot at ``p`` pulled by a beacon at ``q``.

    The robot moves straight while it can, slides along the boundary in the
    direction that decreases its distance to ``q`` otherwise, and stops when
    neither is possible.  A reflex vertex where both incident edges lead
    toward ``q`` ends the path as indeterminate.
    """
    _check_inside(poly, p, q)
    idx = poly.index
    events: list[Event] = []
    cur = p
    limit = 2 * poly.n + 4
    for _ in range(limit):
        if cur == q:
            return AttractionPath(p, q, tuple(events), TerminalStatus(Status.REACHED, cur))
        reach = idx.straight_reach(cur, q)
        if reach is not None:
            events.append(Event(reach, MoveKind.STRAIGHT))
            cur = reach
            continue
        inc = idx.incident_edges(cur)
        w = q - cur
        if len(inc) == 1:
            e = inc[0]
            s = dot(e.direction, w)
            if s == 0:
                return AttractionPath(p, q, tuple(events),
                                      TerminalStatus(Status.STUCK_PERPENDICULAR, cur))
            d = e.direction if s > 0 else e.direction.scale(-1)
            events.append(_slide(e, cur, d, q))
            cur = events[-1].point
            continue
        if len(inc) != 2:
            raise InternalInconsistency(f"blocked at {cur} with {len(inc)} incident edges")
        away = []
        for e in inc:
            other = e.b if e.a == cur else e.a
            away.append((e, _unit(other - cur)))
        s1, s2 = (dot(u, w) for _, u in away)
        if poly.is_reflex_vertex(cur):
            if s1 > 0 and s2 > 0:
                return AttractionPath(p, q, tuple(events),
                                      TerminalStatus(Status.INDETERMINATE, cur))
            raise InternalInconsistency(f"blocked at reflex vertex {cur} without an outward pull")
        if s1 > 0 and s2 > 0:
            raise InternalInconsistency(f"both edges at convex vertex {cur} lead toward the beacon")
        if s1 > 0 or s2 > 0:
            e, u = away[0] if s1 > 0 else away[1]
            events.append(_slide(e, cur, u, q))
            cur = events[-1].point
            continue
        return AttractionPath(p, q, tuple(events), TerminalStatus(Status.STUCK_CONVEX_VERTEX, cur))
    raise InternalInconsistency(f"attraction path from {p} to {q} exceeded {limit} steps")


def _unit(v: Point) -> Point:
    return Point(Q(sign(v.x)), Q(sign(v.y)))


def _slide(e, cur: Point, d: Point, q: Point) -> Event:
    """Slide from ``cur`` along edge ``e`` in direction ``d``.

    Stops at the foot of the perpendicular from ``q`` or at the edge end,
    whichever comes first.
    """
    if d.x:
        end = e.a.x if (e.a.x - cur.x) * d.x > 0 else e.b.x
        target = q.x if (q.x - cur.x) * d.x < (end - cur.x) * d.x else end
        stop = Point(target, cur.y)
    else:
        end = e.a.y if (e.a.y - cur.y) * d.y > 0 else e.b.y
        target = q.y if (q.y - cur.y) * d.y < (end - cur.y) * d.y else end
        stop = Point(cur.x, target)
    return Event(stop, MoveKind.SLIDE, e.index, d)


def attracts(poly: OrthoPolygon, beacon: Point, p: Point) -> bool:
    """True iff a beacon at ``beacon`` pulls a robot at ``p`` all the way in."""
    return attraction_path(poly, p, beacon).reached


def covers(poly: OrthoPolygon, p: Point, q: Point) -> bool:
    return attracts(poly, p, q) and attracts(poly, q, p)


def is_visible(poly: OrthoPolygon, p: Point, q: Point) -> bool:
    """Closed segment ``pq`` inside the closed polygon."""
    return poly.index.segment_inside(p, q)


def staircase_visible(poly: OrthoPolygon, p: Point, q: Point) -> bool:
    """Whether an x- and y-monotone rectilinear path joins ``p`` and ``q`` inside ``poly``."""
    _check_inside(poly, p, q)
    if p.x == q.x or p.y == q.y:
        return is_visible(poly, p, q)
    idx = poly.index
    x0, x1 = sorted((p.x, q.x))
    y0, y1 = sorted((p.y, q.y))
    gx = sorted({x0, x1, *idx.xs[bisect_left(idx.xs, x0):bisect_left(idx.xs, x1)]})
    gy = sorted({y0, y1, *idx.ys[bisect_left(idx.ys, y0):bisect_left(idx.ys, y1)]})
    if p.x > q.x:
        gx.reverse()
    if p.y > q.y:
        gy.reverse()

    def cells(vals, v):
        k = bisect_left(vals, v)
        if k < len(vals) and vals[k] == v:
            return (k - 1, k)
        return (k - 1,)

    def between(vals, a, b):
        lo = a if a < b else b
        k = bisect_left(vals, lo)
        if k < len(vals) and vals[k] == lo:
            return k
        return k - 1

    cx = [cells(idx.xs, x) for x in gx]
    cy = [cells(idx.ys, y) for y in gy]
    # column / row of the index cell strictly between consecutive grid lines
    mx = [between(idx.xs, gx[i], gx[i + 1]) for i in range(len(gx) - 1)]
    my = [between(idx.ys, gy[j], gy[j + 1]) for j in range(len(gy) - 1)]
    cell = idx.cell
    nX, nY = len(gx), len(gy)
    reach = [[False] * nY for _ in range(nX)]
    reach[0][0] = True
    for i in range(nX):
        row = reach[i]
        for j in range(nY):
            if i == 0 and j == 0:
                continue
            ok = False
            if i and reach[i - 1][j]:
                c = mx[i - 1]
                ok = any(cell(c, r) for r in cy[j])
            if not ok and j and row[j - 1]:
                r = my[j - 1]
                ok = any(cell(c, r) for c in cx[i])
            row[j] = ok
    return reach[-1][-1]


# --------------------------------------------------------------------------
# locality


def _clip(a: Point, b: Point, r) -> Optional[tuple[Point, Point]]:
    """Liang-Barsky clip of segment ``ab`` against closed rectangle ``r``."""
    t0, t1 = ZERO, Q(1)
    dx, dy = b.x - a.x, b.y - a.y
    for pk, qk in ((-dx, a.x - r.lo.x), (dx, r.hi.x - a.x), (-dy, a.y - r.lo.y), (dy, r.hi.y - a.y)):
        if pk == 0:
            if qk < 0:
                return None
            continue
        t = qk / pk
        if pk < 0:
            if t > t1:
                return None
            if t > t0:
                t0 = t
        else:
            if t < t0:
                return None
            if t < t1:
                t1 = t
    return Point(a.x + dx * t0, a.y + dy * t0), Point(a.x + dx * t1, a.y + dy * t1)


def path_rect_support(path: AttractionPath, d: Decomposition, live=None) -> set[int]:
    """Rectangles meeting the path in more than a single boundary point.

    ``live`` restricts the count to a subset of rectangles, for paths run in
    a sub-polygon of the decomposed one.
    """
    pts = path.points
    touched: dict[int, set[Point]] = {}
    support: set[int] = set()
    segs = list(zip(pts, pts[1:])) or [(pts[0], pts[0])]
    for a, b in segs:
        lox, hix = min(a.x, b.x), max(a.x, b.x)
        loy, hiy = min(a.y, b.y), max(a.y, b.y)
        for i, r in enumerate(d.rects):
            if i in support or (live is not None and i not in live) or r.lo.x > hix or r.hi.x < lox or r.lo.y > hiy or r.hi.y < loy:
                continue
            c = _clip(a, b, r)
            if c is None:
                continue
            u, v = c
            if u != v or r.contains_interior(u):
                support.add(i)
                continue
            s = touched.setdefault(i, set())
            s.add(u)
            if len(s) > 1:
                support.add(i)
    return support


def is_local(path: AttractionPath, d: Decomposition, live=None) -> bool:
    return len(path_rect_support(path, d, live)) <= 3
