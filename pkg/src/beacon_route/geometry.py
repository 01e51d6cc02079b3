"""Exact rational primitives for orthogonal polygons.

Every coordinate is a ``gmpy2.mpq``; no predicate in this package ever
touches a float.  The module also owns polygon validation, the symbolic
perturbation used to reach general position, the arrangement-based
``epsilon`` and a grid index that answers closed-containment queries in
logarithmic time.
"""
from __future__ import annotations

import random
from bisect import bisect_left, insort
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from gmpy2 import mpq

Coord = mpq

ZERO = mpq(0)
ONE = mpq(1)
HALF = mpq(1, 2)


def Q(value) -> mpq:
    """Coerce ints, strings, Fractions and mpq values to ``mpq``."""
    if isinstance(value, float):
        raise TypeError("floating point coordinates are not accepted")
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    return mpq(value)


class Point(NamedTuple):
    x: mpq
    y: mpq

    def __add__(self, other):  # type: ignore[override]
        return Point(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point(self.x - other[0], self.y - other[1])

    def scale(self, k) -> "Point":
        return Point(self.x * k, self.y * k)

    def __repr__(self) -> str:
        return f"Point({_fmt(self.x)}, {_fmt(self.y)})"


def _fmt(v: mpq) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def pt(x, y) -> Point:
    return Point(Q(x), Q(y))


X_HAT = Point(ONE, ZERO)
Y_HAT = Point(ZERO, ONE)


def dot(a: Point, b: Point) -> mpq:
    return a[0] * b[0] + a[1] * b[1]


def cross(o: Point, a: Point, b: Point) -> mpq:
    """Twice the signed area of triangle ``oab``."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def chebyshev(a: Point, b: Point) -> mpq:
    return max(abs(a[0] - b[0]), abs(a[1] - b[1]))


def sign(v) -> int:
    return (v > 0) - (v < 0)


# --------------------------------------------------------------------------
# errors


class GeometryError(ValueError):
    """Base class for invalid geometric input."""

    def __init__(self, message: str, indices: Sequence[int] = ()):
        super().__init__(message)
        self.indices = tuple(indices)


class TooFewVertices(GeometryError):
    pass


class NotOrthogonal(GeometryError):
    pass


class NotSimple(GeometryError):
    pass


class GeneralPositionViolation(GeometryError):
    pass


class PerturbationFailure(GeometryError):
    pass


class GenerationFailure(GeometryError):
    pass


class EmptyInput(GeometryError):
    pass


class PointOutsidePolygon(GeometryError):
    pass


# --------------------------------------------------------------------------
# rectangles and hulls


@dataclass(frozen=True)
class Rect:
    lo: Point
    hi: Point

    def __post_init__(self):
        if not (self.lo.x < self.hi.x and self.lo.y < self.hi.y):
            raise GeometryError(f"degenerate rectangle {self.lo} {self.hi}")

    @classmethod
    def from_corners(cls, a: Point, b: Point) -> "Rect":
        return cls(Point(min(a.x, b.x), min(a.y, b.y)), Point(max(a.x, b.x), max(a.y, b.y)))

    @property
    def width(self) -> mpq:
        return self.hi.x - self.lo.x

    @property
    def height(self) -> mpq:
        return self.hi.y - self.lo.y

    @property
    def area(self) -> mpq:
        return self.width * self.height

    @property
    def center(self) -> Point:
        return Point((self.lo.x + self.hi.x) / 2, (self.lo.y + self.hi.y) / 2)

    def corners(self) -> tuple[Point, Point, Point, Point]:
        """Corners in counterclockwise order starting at the lower left."""
        return (self.lo, Point(self.hi.x, self.lo.y), self.hi, Point(self.lo.x, self.hi.y))

    def contains(self, p: Point) -> bool:
        return self.lo.x <= p.x <= self.hi.x and self.lo.y <= p.y <= self.hi.y

    def contains_interior(self, p: Point) -> bool:
        return self.lo.x < p.x < self.hi.x and self.lo.y < p.y < self.hi.y

    def contains_rect(self, other: "Rect") -> bool:
        return self.contains(other.lo) and self.contains(other.hi)


@dataclass(frozen=True)
class Segment:
    """Degenerate hull: an axis-parallel segment."""

    a: Point
    b: Point

    @property
    def vertical(self) -> bool:
        return self.a.x == self.b.x


def rectangular_hull(points: Iterable[Point]):
    """Smallest axis-aligned box containing ``points``.

    Returns a :class:`Rect`, or a :class:`Point` / :class:`Segment` when the
    box is degenerate.
    """
    pts = list(points)
    if not pts:
        raise EmptyInput("rectangular hull of an empty set")
    lo = Point(min(p.x for p in pts), min(p.y for p in pts))
    hi = Point(max(p.x for p in pts), max(p.y for p in pts))
    if lo == hi:
        return lo
    if lo.x == hi.x or lo.y == hi.y:
        return Segment(lo, hi)
    return Rect(lo, hi)


# --------------------------------------------------------------------------
# polygons


class Containment(Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


@dataclass(frozen=True)
class Edge:
    index: int
    a: Point
    b: Point

    @property
    def horizontal(self) -> bool:
        return self.a.y == self.b.y

    @property
    def direction(self) -> Point:
        """Unit axis vector from ``a`` to ``b``."""
        return Point(Q(sign(self.b.x - self.a.x)), Q(sign(self.b.y - self.a.y)))

    @property
    def inward(self) -> Point:
        """Unit normal pointing into the polygon (left of a CCW edge)."""
        d = self.direction
        return Point(-d.y, d.x)

    def contains(self, p: Point) -> bool:
        if self.horizontal:
            return p.y == self.a.y and min(self.a.x, self.b.x) <= p.x <= max(self.a.x, self.b.x)
        return p.x == self.a.x and min(self.a.y, self.b.y) <= p.y <= max(self.a.y, self.b.y)


@dataclass(frozen=True, eq=False)
class OrthoPolygon:
    """A simple rectilinear polygon with vertices in counterclockwise order.

    Construct through :func:`validate_polygon`; the constructor itself does
    not re-check invariants.
    """

    vertices: tuple[Point, ...]
    general_position: bool = True

    @property
    def n(self) -> int:
        return len(self.vertices)

    def __eq__(self, other) -> bool:
        return isinstance(other, OrthoPolygon) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        vs = self.vertices
        return tuple(Edge(i, vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))

    @cached_property
    def reflex_flags(self) -> tuple[bool, ...]:
        vs = self.vertices
        n = len(vs)
        return tuple(cross(vs[i - 1], vs[i], vs[(i + 1) % n]) < 0 for i in range(n))

    @property
    def reflex_vertices(self) -> list[Point]:
        return [v for v, r in zip(self.vertices, self.reflex_flags) if r]

    @cached_property
    def vertex_index(self) -> dict[Point, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def is_reflex_vertex(self, p: Point) -> bool:
        i = self.vertex_index.get(p)
        return i is not None and self.reflex_flags[i]

    @cached_property
    def area(self) -> mpq:
        return signed_area(self.vertices)

    @cached_property
    def index(self) -> "PolygonIndex":
        return PolygonIndex(self)

    @cached_property
    def bbox(self) -> Rect:
        return rectangular_hull(self.vertices)


def signed_area(vs: Sequence[Point]) -> mpq:
    s = ZERO
    n = len(vs)
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        s += a.x * b.y - b.x * a.y
    return s / 2


def _boxes_touch(a0: Point, a1: Point, b0: Point, b1: Point) -> bool:
    return (
        max(min(a0.x, a1.x), min(b0.x, b1.x)) <= min(max(a0.x, a1.x), max(b0.x, b1.x))
        and max(min(a0.y, a1.y), min(b0.y, b1.y)) <= min(max(a0.y, a1.y), max(b0.y, b1.y))
    )


def _check_orthogonal_simple(vs: Sequence[Point]) -> None:
    n = len(vs)
    if n < 4:
        raise TooFewVertices(f"need at least 4 vertices, got {n}", range(n))
    seen: dict[Point, int] = {}
    for i, v in enumerate(vs):
        if v in seen:
            raise NotSimple(f"vertex {i} repeats vertex {seen[v]}", (seen[v], i))
        seen[v] = i
    horiz = []
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        if a.x != b.x and a.y != b.y:
            raise NotOrthogonal(f"edge {i} is neither horizontal nor vertical", (i,))
        horiz.append(a.y == b.y)
    for i in range(n):
        if horiz[i] == horiz[(i + 1) % n]:
            raise NotOrthogonal(
                f"edges {i} and {(i + 1) % n} are collinear at vertex {(i + 1) % n}",
                (i, (i + 1) % n),
            )
    for i in range(n):
        a0, a1 = vs[i], vs[(i + 1) % n]
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            if _boxes_touch(a0, a1, vs[j], vs[(j + 1) % n]):
                raise NotSimple(f"edges {i} and {j} intersect", (i, j))


def _check_general_position(vs: Sequence[Point]) -> None:
    n = len(vs)
    ys: dict[mpq, int] = {}
    xs: dict[mpq, int] = {}
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        table, key = (ys, a.y) if a.y == b.y else (xs, a.x)
        if key in table:
            kind = "co-horizontal" if table is ys else "co-vertical"
            raise GeneralPositionViolation(f"edges {table[key]} and {i} are {kind}", (table[key], i))
        table[key] = i


def validate_polygon(vertices: Sequence, require_general_position: bool = True) -> OrthoPolygon:
    """Validate a vertex cycle and return it as a CCW :class:`OrthoPolygon`.

    Raises one of :class:`TooFewVertices`, :class:`NotOrthogonal`,
    :class:`NotSimple` or :class:`GeneralPositionViolation`; each carries the
    offending vertex or edge indices in ``.indices``.
    """
    vs = [v if isinstance(v, Point) else pt(*v) for v in vertices]
    vs = [Point(Q(v.x), Q(v.y)) for v in vs]
    _check_orthogonal_simple(vs)
    if require_general_position:
        _check_general_position(vs)
    if signed_area(vs) < 0:
        vs.reverse()
    return OrthoPolygon(tuple(vs), general_position=require_general_position)


# --------------------------------------------------------------------------
# perturbation


def _min_coordinate_gap(vs: Sequence[Point]) -> mpq:
    best = None
    for vals in (sorted({v.x for v in vs}), sorted({v.y for v in vs})):
        for a, b in zip(vals, vals[1:]):
            if best is None or b - a < best:
                best = b - a
    return best


def perturb_to_general_position(vertices: Sequence, delta=None) -> list[Point]:
    """Push co-linear edges apart, each one inward, by distinct multiples of delta.

    Within every class of co-horizontal (co-vertical) edges the first edge
    stays put and the k-th one moves ``k * delta`` toward the interior.  The
    default ``delta`` is the smallest positive coordinate gap over ``4 n``,
    which keeps every vertex within ``n * delta`` of where it started.
    """
    vs = [v if isinstance(v, Point) else pt(*v) for v in vertices]
    vs = [Point(Q(v.x), Q(v.y)) for v in vs]
    _check_orthogonal_simple(vs)
    ccw = signed_area(vs) > 0
    n = len(vs)
    if delta is None:
        delta = _min_coordinate_gap(vs) / (4 * n)
    delta = Q(delta)

    classes: dict[tuple[bool, mpq], list[int]] = {}
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        key = (True, a.y) if a.y == b.y else (False, a.x)
        classes.setdefault(key, []).append(i)

    shift_x = [ZERO] * n  # per vertex
    shift_y = [ZERO] * n
    for (horizontal, _), members in classes.items():
        for k, i in enumerate(members):
            if k == 0:
                continue
            a, b = vs[i], vs[(i + 1) % n]
            d = Point(Q(sign(b.x - a.x)), Q(sign(b.y - a.y)))
            inward = Point(-d.y, d.x) if ccw else Point(d.y, -d.x)
            off = delta * k
            j = (i + 1) % n
            if horizontal:
                shift_y[i] = shift_y[j] = inward.y * off
            else:
                shift_x[i] = shift_x[j] = inward.x * off
    out = [Point(v.x + shift_x[i], v.y + shift_y[i]) for i, v in enumerate(vs)]
    for i in range(n):
        if out[i] == out[(i + 1) % n]:
            raise PerturbationFailure(f"edge {i} collapses under perturbation", (i,))
    try:
        validate_polygon(out)
    except GeometryError as exc:
        raise PerturbationFailure(f"perturbed polygon is invalid: {exc}", exc.indices) from exc
    return out


# --------------------------------------------------------------------------
# epsilon


def _arrangement_lines(vs: Sequence[Point]) -> list[tuple[mpq, mpq, mpq]]:
    lines = set()
    n = len(vs)
    for i in range(n):
        p = vs[i]
        for j in range(i + 1, n):
            q = vs[j]
            a = q.y - p.y
            b = p.x - q.x
            if a != 0:
                b, c = b / a, (p.x * a + p.y * b) / a
                a = ONE
            else:
                c = p.y  # b == p.x - q.x != 0; line y = p.y
                b = ONE
            lines.add((a, b, c))
    return sorted(lines)


def arrangement_points(vs: Sequence[Point]) -> set[Point]:
    """Distinct intersection points of all lines through vertex pairs."""
    lines = _arrangement_lines(vs)
    pts: set[Point] = set()
    for i, (a1, b1, c1) in enumerate(lines):
        for a2, b2, c2 in lines[i + 1:]:
            det = a1 * b2 - a2 * b1
            if det == 0:
                continue
            pts.add(Point((c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det))
    return pts


def min_chebyshev_gap(points: Iterable[Point]) -> mpq:
    """Smallest L-infinity distance between two distinct points (sweep)."""
    pts = sorted(set(points))
    if len(pts) < 2:
        raise EmptyInput("need two distinct points")
    best = chebyshev(pts[0], pts[1])
    active: list[tuple[mpq, mpq]] = []  # (y, x), sorted
    tail = 0
    for p in pts:
        while pts[tail].x < p.x - best:
            q = pts[tail]
            del active[bisect_left(active, (q.y, q.x))]
            tail += 1
        k = bisect_left(active, (p.y - best, p.x - best))
        while k < len(active) and active[k][0] <= p.y + best:
            qy, qx = active[k]
            d = max(abs(qx - p.x), abs(qy - p.y))
            if 0 < d < best:
                best = d
            k += 1
        insort(active, (p.y, p.x))
    return best


_EPS_CACHE: dict[tuple[Point, ...], mpq] = {}


def compute_epsilon(poly: OrthoPolygon) -> mpq:
    """Half the minimum Chebyshev gap between points of the vertex-line arrangement."""
    key = poly.vertices
    hit = _EPS_CACHE.get(key)
    if hit is None:
        hit = min_chebyshev_gap(arrangement_points(poly.vertices)) / 2
        if len(_EPS_CACHE) > 512:
            _EPS_CACHE.clear()
        _EPS_CACHE[key] = hit
    return hit


# --------------------------------------------------------------------------
# containment


def contains_point(poly: OrthoPolygon, p: Point) -> Containment:
    """Exact ray-crossing classification with an explicit on-edge test."""
    for e in poly.edges:
        if e.contains(p):
            return Containment.BOUNDARY
    inside = False
    for e in poly.edges:
        if e.horizontal:
            continue
        lo, hi = (e.a.y, e.b.y) if e.a.y < e.b.y else (e.b.y, e.a.y)
        # half-open rule on y avoids double counting at vertices
        if lo <= p.y < hi and e.a.x > p.x:
            inside = not inside
    return Containment.INTERIOR if inside else Containment.EXTERIOR


class PolygonIndex:
    """Cell grid over the distinct vertex coordinates.

    Each open cell lies entirely inside or outside the polygon, so closed
    containment of any point reduces to looking up the cells around it.
    """

    def __init__(self, poly: OrthoPolygon):
        self.poly = poly
        self.xs = sorted({v.x for v in poly.vertices})
        self.ys = sorted({v.y for v in poly.vertices})
        nx, ny = len(self.xs) - 1, len(self.ys) - 1
        horizontals = [e for e in poly.edges if e.horizontal]
        inside = [[False] * ny for _ in range(nx)]
        for i in range(nx):
            xm = (self.xs[i] + self.xs[i + 1]) / 2
            crossing = sorted(
                e.a.y for e in horizontals if min(e.a.x, e.b.x) < xm < max(e.a.x, e.b.x)
            )
            for k in range(0, len(crossing) - 1, 2):
                lo, hi = crossing[k], crossing[k + 1]
                j0 = bisect_left(self.ys, lo)
                j1 = bisect_left(self.ys, hi)
                for j in range(j0, j1):
                    inside[i][j] = True
        self.inside = inside
        self.nx, self.ny = nx, ny
        self.h_edges: dict[mpq, list[Edge]] = {}
        self.v_edges: dict[mpq, list[Edge]] = {}
        for e in poly.edges:
            if e.horizontal:
                self.h_edges.setdefault(e.a.y, []).append(e)
            else:
                self.v_edges.setdefault(e.a.x, []).append(e)

    def cell(self, i: int, j: int) -> bool:
        return 0 <= i < self.nx and 0 <= j < self.ny and self.inside[i][j]

    def classify(self, p: Point) -> Containment:
        xs, ys = self.xs, self.ys
        kx = bisect_left(xs, p.x)
        if kx < len(xs) and xs[kx] == p.x:
            ci = (kx - 1, kx)
        else:
            ci = (kx - 1,)
        ky = bisect_left(ys, p.y)
        if ky < len(ys) and ys[ky] == p.y:
            cj = (ky - 1, ky)
        else:
            cj = (ky - 1,)
        seen_in = seen_out = False
        for i in ci:
            for j in cj:
                if self.cell(i, j):
                    seen_in = True
                else:
                    seen_out = True
        if not seen_in:
            return Containment.EXTERIOR
        return Containment.BOUNDARY if seen_out else Containment.INTERIOR

    def inside_closed(self, p: Point) -> bool:
        return self.classify(p) is not Containment.EXTERIOR

    def incident_edges(self, p: Point) -> list[Edge]:
        out = [e for e in self.h_edges.get(p.y, ()) if e.contains(p)]
        out += [e for e in self.v_edges.get(p.x, ()) if e.contains(p)]
        return out

    def straight_reach(self, p: Point, q: Point) -> Point | None:
        """Farthest point of segment ``pq`` reachable from ``p`` inside the closed polygon.

        Returns ``None`` when every neighbourhood of ``p`` along the segment
        leaves the polygon.
        """
        dx, dy = q.x - p.x, q.y - p.y
        ts = set()
        if dx:
            lo, hi = (p.x, q.x) if dx > 0 else (q.x, p.x)
            for X in self.xs[bisect_left(self.xs, lo):bisect_left(self.xs, hi)]:
                if X != lo:
                    ts.add((X - p.x) / dx)
        if dy:
            lo, hi = (p.y, q.y) if dy > 0 else (q.y, p.y)
            for Y in self.ys[bisect_left(self.ys, lo):bisect_left(self.ys, hi)]:
                if Y != lo:
                    ts.add((Y - p.y) / dy)
        ts.add(ONE)
        prev = ZERO
        for t in sorted(ts):
            mid = (prev + t) / 2
            if self.classify(Point(p.x + dx * mid, p.y + dy * mid)) is Containment.EXTERIOR:
                if prev == 0:
                    return None
                return Point(p.x + dx * prev, p.y + dy * prev)
            prev = t
        return q

    def segment_inside(self, p: Point, q: Point) -> bool:
        if p == q:
            return self.inside_closed(p)
        return self.inside_closed(p) and self.straight_reach(p, q) == q

    def rect_inside(self, r: Rect) -> bool:
        """Closed rectangle ``r`` lies in the closed polygon."""
        xs, ys = self.xs, self.ys
        if r.lo.x < xs[0] or r.hi.x > xs[-1] or r.lo.y < ys[0] or r.hi.y > ys[-1]:
            return False
        i0 = bisect_left(xs, r.lo.x)
        i0 = i0 - 1 if xs[i0] != r.lo.x else i0
        j0 = bisect_left(ys, r.lo.y)
        j0 = j0 - 1 if ys[j0] != r.lo.y else j0
        i1, j1 = bisect_left(xs, r.hi.x), bisect_left(ys, r.hi.y)
        return all(self.inside[i][j] for i in range(i0, i1) for j in range(j0, j1))


# --------------------------------------------------------------------------
# random corpus


def _notch(vs: list[Point], k: int, rng: random.Random, used_x: set, used_y: set,
           corner: bool, lo_c: int, hi_c: int) -> list[Point] | None:
    n = len(vs)
    a, b = vs[k], vs[(k + 1) % n]
    horizontal = a.y == b.y
    along_a, along_b = (a.x, b.x) if horizontal else (a.y, b.y)
    used_along, used_across = (used_x, used_y) if horizontal else (used_y, used_x)

    def fresh(lo, hi, used):
        lo, hi = int(lo), int(hi)
        if hi - lo < 2:
            return None
        for _ in range(20):
            v = rng.randint(lo + 1, hi - 1)
            if v not in used:
                return Q(v)
        return None

    lo, hi = min(along_a, along_b), max(along_a, along_b)
    forward = along_b > along_a
    if corner:
        t = fresh(lo, hi, used_along)
        if t is None:
            return None
        at_start = rng.random() < 0.5
        s_val, t_val = (along_a, t) if at_start else (t, along_b)
    else:
        s = fresh(lo, hi, used_along)
        t = fresh(lo, hi, used_along)
        if s is None or t is None or s == t:
            return None
        s_val, t_val = (min(s, t), max(s, t)) if forward else (max(s, t), min(s, t))
    level = a.y if horizontal else a.x
    new_level = fresh(lo_c, hi_c, used_across)
    if new_level is None or new_level == level:
        return None

    def mk(u, v):
        return Point(u, v) if horizontal else Point(v, u)

    path = [mk(s_val, level), mk(s_val, new_level), mk(t_val, new_level), mk(t_val, level)]
    new = vs[:k + 1] + path + vs[k + 1:]
    # drop duplicates and collinear vertices produced by corner cuts
    changed = True
    while changed:
        changed = False
        m = len(new)
        for i in range(m):
            p0, p1, p2 = new[i - 1], new[i], new[(i + 1) % m]
            if p1 == p2 or cross(p0, p1, p2) == 0:
                del new[i]
                changed = True
                break
    return new


def generate_random_orthogonal(n_target: int, seed: int) -> OrthoPolygon:
    """Deterministic random general-position orthogonal polygon with ``n_target`` vertices.

    Starts from a rectangle and repeatedly cuts a notch into, or pushes a bump
    out of, a random edge.  Every new edge gets a fresh integer coordinate,
    so the result is already in general position; it is still passed through
    :func:`perturb_to_general_position` for uniformity.
    """
    if n_target < 4 or n_target % 2:
        raise GeometryError(f"n_target must be even and >= 4, got {n_target}")
    span = 40 * n_target
    for attempt in range(64):
        rng = random.Random(seed * 1_000_003 + attempt)
        vs = [pt(0, 0), pt(span, 0), pt(span, span), pt(0, span)]
        used_x = {ZERO, Q(span)}
        used_y = {ZERO, Q(span)}
        failures = 0
        while len(vs) < n_target and failures < 400:
            remaining = n_target - len(vs)
            corner = remaining == 2 or rng.random() < 0.35
            k = rng.randrange(len(vs))
            cand = _notch(vs, k, rng, used_x, used_y, corner, -span // 4, span + span // 4)
            if cand is None or len(cand) > n_target or len(cand) <= len(vs):
                failures += 1
                continue
            try:
                validate_polygon(cand)
            except GeometryError:
                failures += 1
                continue
            vs = cand
            used_x = {v.x for v in vs}
            used_y = {v.y for v in vs}
        if len(vs) == n_target:
            return validate_polygon(perturb_to_general_position(vs))
    raise GenerationFailure(f"could not generate n={n_target} polygon for seed {seed}")
