"""Vertical decomposition, dual tree and the neighbour taxonomy."""
from __future__ import annotations

from bisect import bisect_left
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Optional

from gmpy2 import mpq

from .geometry import (
    GeometryError,
    OrthoPolygon,
    Point,
    Rect,
    validate_polygon,
)


class InternalInconsistency(RuntimeError):
    """A structural invariant that valid input can never violate was broken."""


class NotAdjacent(GeometryError):
    pass


class NotShortNeighbor(GeometryError):
    pass


class NotPaired(GeometryError):
    pass


class Side(Enum):
    LEFT = "left"
    RIGHT = "right"

    @property
    def opposite(self) -> "Side":
        return Side.RIGHT if self is Side.LEFT else Side.LEFT


class VPos(Enum):
    TOP = "top"
    BOTTOM = "bottom"

    @property
    def opposite(self) -> "VPos":
        return VPos.BOTTOM if self is VPos.TOP else VPos.TOP


class Size(Enum):
    TALL = "tall"
    SOLO = "solo"
    PAIRED = "paired"


@dataclass(frozen=True)
class Vertical:
    x: mpq
    y_lo: mpq
    y_hi: mpq
    reflex_vertex: Point

    @property
    def far_end(self) -> Point:
        """Endpoint lying inside a horizontal polygon edge."""
        y = self.y_lo if self.reflex_vertex.y == self.y_hi else self.y_hi
        return Point(self.x, y)

    @property
    def midpoint(self) -> Point:
        return Point(self.x, (self.y_lo + self.y_hi) / 2)

    def contains(self, p: Point) -> bool:
        return p.x == self.x and self.y_lo <= p.y <= self.y_hi


@dataclass(frozen=True)
class NeighborRelation:
    side: Side
    vertical_pos: VPos
    size: Size
    shared_vertical: Vertical
    shared_reflex: Point

    @property
    def tall(self) -> bool:
        return self.size is Size.TALL


@dataclass(frozen=True)
class Region:
    """A closed rectangle with finitely many points removed."""

    rect: Rect
    excluded: frozenset = frozenset()

    def contains(self, p: Point) -> bool:
        return self.rect.contains(p) and p not in self.excluded


@dataclass(frozen=True, eq=False)
class Decomposition:
    poly: OrthoPolygon
    rects: tuple[Rect, ...]
    verticals: tuple[Vertical, ...]
    # (a, b) with a < b  ->  index into verticals
    edges: dict

    @cached_property
    def neighbors(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {i: [] for i in range(len(self.rects))}
        for a, b in self.edges:
            out[a].append(b)
            out[b].append(a)
        return {k: tuple(sorted(v)) for k, v in out.items()}

    def shared_vertical(self, a: int, b: int) -> Vertical:
        key = (a, b) if a < b else (b, a)
        if key not in self.edges:
            raise NotAdjacent(f"rectangles {a} and {b} are not adjacent", (a, b))
        return self.verticals[self.edges[key]]

    def rect_of_point(self, p: Point) -> list[int]:
        """Ids of all closed rectangles containing ``p``."""
        xs = self._lo_xs
        hi = bisect_left(xs, (p.x, 1))
        return [i for i in range(hi) if self.rects[i].contains(p)]

    @cached_property
    def _lo_xs(self) -> list:
        return [(r.lo.x, 0) for r in self.rects]

    def __len__(self) -> int:
        return len(self.rects)


def _chords(poly: OrthoPolygon) -> list[Vertical]:
    horizontals = [e for e in poly.edges if e.horizontal]
    vs = poly.vertices
    n = poly.n
    out = []
    for i, v in enumerate(vs):
        if not poly.reflex_flags[i]:
            continue
        prev, nxt = vs[i - 1], vs[(i + 1) % n]
        other = prev if prev.x == v.x else nxt
        up = other.y < v.y  # the vertical edge runs downward, so the chord goes up
        best = None
        for e in horizontals:
            lo, hi = sorted((e.a.x, e.b.x))
            if not lo < v.x < hi:
                continue
            y = e.a.y
            if (up and y > v.y) or (not up and y < v.y):
                if best is None or abs(y - v.y) < abs(best - v.y):
                    best = y
        if best is None:
            raise InternalInconsistency(f"no chord target for reflex vertex {v}")
        out.append(Vertical(v.x, min(v.y, best), max(v.y, best), v))
    return out


def vertical_decomposition(poly: OrthoPolygon) -> Decomposition:
    """Cut ``poly`` by a vertical chord from every reflex vertex."""
    xs = poly.index.xs
    horizontals = [e for e in poly.edges if e.horizontal]
    # slab intervals keyed by (bottom edge, top edge); runs of equal keys merge
    open_runs: dict[tuple[int, int], list] = {}
    finished: list[Rect] = []
    for k in range(len(xs) - 1):
        xm = (xs[k] + xs[k + 1]) / 2
        crossing = sorted(
            (e.a.y, e.index) for e in horizontals if min(e.a.x, e.b.x) < xm < max(e.a.x, e.b.x)
        )
        keys = {}
        for j in range(0, len(crossing), 2):
            (y0, e0), (y1, e1) = crossing[j], crossing[j + 1]
            keys[(e0, e1)] = (y0, y1)
        for key in list(open_runs):
            if key not in keys:
                x0, y0, y1 = open_runs.pop(key)
                finished.append(Rect(Point(x0, y0), Point(xs[k], y1)))
        for key, (y0, y1) in keys.items():
            if key not in open_runs:
                open_runs[key] = [xs[k], y0, y1]
    for x0, y0, y1 in open_runs.values():
        finished.append(Rect(Point(x0, y0), Point(xs[-1], y1)))
    rects = tuple(sorted(finished, key=lambda r: (r.lo.x, r.lo.y)))

    verticals = tuple(sorted(_chords(poly), key=lambda v: (v.x, v.y_lo)))
    edges = {}
    for vi, c in enumerate(verticals):
        mid = c.midpoint
        left = [i for i, r in enumerate(rects) if r.hi.x == c.x and r.lo.y <= mid.y <= r.hi.y]
        right = [i for i, r in enumerate(rects) if r.lo.x == c.x and r.lo.y <= mid.y <= r.hi.y]
        if len(left) != 1 or len(right) != 1:
            raise InternalInconsistency(f"vertical {c} does not separate exactly two rectangles")
        a, b = sorted((left[0], right[0]))
        edges[(a, b)] = vi
    d = Decomposition(poly, rects, verticals, edges)
    n = poly.n
    if len(verticals) != (n - 4) // 2 or len(rects) != (n - 2) // 2:
        raise InternalInconsistency(
            f"decomposition counts {len(verticals)} verticals / {len(rects)} rectangles for n={n}"
        )
    return d


# --------------------------------------------------------------------------
# dual tree


def dual_tree(d: Decomposition, live: Optional[Iterable[int]] = None) -> dict[int, tuple[int, ...]]:
    """Adjacency of the (live) rectangles across shared verticals."""
    ids = set(range(len(d.rects))) if live is None else set(live)
    adj = {i: tuple(j for j in d.neighbors[i] if j in ids) for i in sorted(ids)}
    m = sum(len(v) for v in adj.values()) // 2
    if ids and m != len(ids) - 1:
        raise InternalInconsistency(f"dual graph has {m} edges on {len(ids)} nodes")
    if ids:
        start = min(ids)
        seen = {start}
        todo = [start]
        while todo:
            u = todo.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        if seen != ids:
            raise InternalInconsistency("dual graph is disconnected")
    return adj


@dataclass
class RootedDualTree:
    root: int
    parent: dict[int, Optional[int]]
    children: dict[int, tuple[int, ...]]
    depth: dict[int, int]

    @property
    def nodes(self) -> list[int]:
        return sorted(self.parent)

    @property
    def height(self) -> int:
        return max(self.depth.values())

    def subtree(self, v: int) -> list[int]:
        out, todo = [], [v]
        while todo:
            u = todo.pop()
            out.append(u)
            todo.extend(self.children[u])
        return sorted(out)

    def subtree_height(self, v: int) -> int:
        return max(self.depth[u] for u in self.subtree(v)) - self.depth[v]

    def deepest_leaf(self) -> int:
        best = max(self.depth.values())
        return min(u for u, k in self.depth.items() if k == best)


def root_at_leaf(d: Decomposition, live: Optional[Iterable[int]] = None,
                 root: Optional[int] = None) -> RootedDualTree:
    """Root the (live) dual tree at ``root`` or the leaf with the smallest id."""
    adj = dual_tree(d, live)
    if root is None:
        leaves = [u for u, nb in adj.items() if len(nb) <= 1]
        root = min(leaves)
    parent: dict[int, Optional[int]] = {root: None}
    depth = {root: 0}
    order = deque([root])
    while order:
        u = order.popleft()
        for w in adj[u]:
            if w not in parent:
                parent[w] = u
                depth[w] = depth[u] + 1
                order.append(w)
    children = {u: tuple(w for w in adj[u] if parent.get(w) == u) for u in adj}
    return RootedDualTree(root, parent, children, depth)


# --------------------------------------------------------------------------
# neighbour taxonomy


def side_of(d: Decomposition, R: int, S: int) -> Side:
    return Side.LEFT if d.rects[S].hi.x == d.rects[R].lo.x else Side.RIGHT


def is_tall_neighbor(d: Decomposition, R: int, S: int) -> bool:
    return d.rects[S].height > d.rects[R].height


def side_neighbors(d: Decomposition, R: int, side: Side, live=None) -> list[int]:
    out = [S for S in d.neighbors[R] if side_of(d, R, S) is side]
    if live is not None:
        out = [S for S in out if S in live]
    return out


def classify_neighbor(d: Decomposition, R: int, S: int, live=None) -> NeighborRelation:
    """How ``S`` sits relative to ``R``; solo/paired is judged among ``live`` rectangles."""
    v = d.shared_vertical(R, S)
    rr, rs = d.rects[R], d.rects[S]
    side = side_of(d, R, S)
    pos = VPos.TOP if rr.hi.y == rs.hi.y else VPos.BOTTOM
    if rr.hi.y != rs.hi.y and rr.lo.y != rs.lo.y:
        raise InternalInconsistency(f"rectangles {R} and {S} share neither top nor bottom")
    if is_tall_neighbor(d, R, S):
        size = Size.TALL
        if len(side_neighbors(d, R, side)) != 1:
            raise InternalInconsistency(f"tall neighbour {S} of {R} is not alone on its side")
    else:
        k = len(side_neighbors(d, R, side, live))
        if k not in (1, 2):
            raise InternalInconsistency(f"rectangle {R} has {k} short neighbours on one side")
        size = Size.SOLO if k == 1 else Size.PAIRED
    return NeighborRelation(side, pos, size, v, v.reflex_vertex)


def is_reflex_in(d: Decomposition, p: Point, live=None) -> bool:
    """Whether ``p`` is a reflex vertex of the union of the ``live`` rectangles."""
    if live is None:
        return d.poly.is_reflex_vertex(p)
    occupied = set()
    for i in d.rect_of_point(p):
        if i not in live:
            continue
        r = d.rects[i]
        for qx in (-1, 1):
            for qy in (-1, 1):
                cx = r.lo.x < p.x if qx < 0 else p.x < r.hi.x
                cy = r.lo.y < p.y if qy < 0 else p.y < r.hi.y
                if cx and cy:
                    occupied.add((qx, qy))
    return len(occupied) == 3


def curl_vertex(d: Decomposition, S: int, R: int, live=None) -> tuple[Point, bool]:
    """Vertex of short neighbour ``S`` horizontally across from the reflex vertex it shares with ``R``."""
    if is_tall_neighbor(d, R, S):
        raise NotShortNeighbor(f"{S} is a tall neighbour of {R}", (S, R))
    r = d.shared_vertical(R, S).reflex_vertex
    s = d.rects[S]
    x = s.lo.x if s.hi.x == r.x else s.hi.x
    q = Point(x, r.y)
    return q, is_reflex_in(d, q, live)


def s_star(d: Decomposition, S: int, R: int, live=None) -> Region:
    q, reflex = curl_vertex(d, S, R, live)
    return Region(d.rects[S], frozenset({q}) if reflex else frozenset())


def modified_center(d: Decomposition, R: int, side: Side, live=None) -> Region:
    """Full-width strip of ``R`` spanning the wall between its paired neighbours."""
    nb = side_neighbors(d, R, side, live)
    if len(nb) != 2 or any(is_tall_neighbor(d, R, S) for S in nb):
        raise NotPaired(f"rectangle {R} has no paired {side.value} neighbours", (R,))
    r1, r2 = sorted((d.shared_vertical(R, S).reflex_vertex for S in nb), key=lambda p: p.y)
    rr = d.rects[R]
    strip = Rect(Point(rr.lo.x, r1.y), Point(rr.hi.x, r2.y))
    return Region(strip, frozenset({r1, r2}))


# --------------------------------------------------------------------------
# sub-polygons


def polygon_from_rects(d: Decomposition, live: Iterable[int]) -> OrthoPolygon:
    """Boundary of the union of the ``live`` rectangles as a polygon."""
    live = sorted(set(live))
    if len(live) == len(d.rects):
        return d.poly
    # elementary boundary pieces; shared pieces cancel
    xs = sorted({c for i in live for c in (d.rects[i].lo.x, d.rects[i].hi.x)})
    ys = sorted({c for i in live for c in (d.rects[i].lo.y, d.rects[i].hi.y)})
    pieces: dict[tuple[Point, Point], int] = {}

    def add(a: Point, b: Point):
        key = (a, b) if a < b else (b, a)
        pieces[key] = pieces.get(key, 0) + 1

    for i in live:
        r = d.rects[i]
        xi = xs[bisect_left(xs, r.lo.x):bisect_left(xs, r.hi.x) + 1]
        yi = ys[bisect_left(ys, r.lo.y):bisect_left(ys, r.hi.y) + 1]
        for x0, x1 in zip(xi, xi[1:]):
            add(Point(x0, r.lo.y), Point(x1, r.lo.y))
            add(Point(x0, r.hi.y), Point(x1, r.hi.y))
        for y0, y1 in zip(yi, yi[1:]):
            add(Point(r.lo.x, y0), Point(r.lo.x, y1))
            add(Point(r.hi.x, y0), Point(r.hi.x, y1))
    boundary = [k for k, c in pieces.items() if c == 1]
    nxt: dict[Point, list[Point]] = {}
    for a, b in boundary:
        nxt.setdefault(a, []).append(b)
        nxt.setdefault(b, []).append(a)
    if any(len(v) != 2 for v in nxt.values()):
        raise InternalInconsistency("union boundary is not a simple cycle")
    start = min(nxt)
    cycle = [start]
    prev, cur = None, start
    while True:
        a, b = nxt[cur]
        step = a if a != prev else b
        if step == start:
            break
        cycle.append(step)
        prev, cur = cur, step
    if len(cycle) != len(boundary):
        raise InternalInconsistency("union of live rectangles is not connected")
    # drop collinear points
    out = []
    m = len(cycle)
    for i in range(m):
        a, b, c = cycle[i - 1], cycle[i], cycle[(i + 1) % m]
        if (a.x == b.x == c.x) or (a.y == b.y == c.y):
            continue
        out.append(b)
    return validate_polygon(out, require_general_position=False)
