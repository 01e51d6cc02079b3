"""Width-one orthogonal spirals that need two beacons per section.

Layout: the inner (reflex) chain starts at ``r[0] = (-l1, 0)``, runs in +x to
``r[1]`` at the origin and turns clockwise at every reflex vertex.  The outer
chain is the inner one pushed one unit to the left of the walking direction.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .attraction import AttractionPath, TerminalStatus, attraction_path
from .geometry import (
    GeometryError,
    OrthoPolygon,
    Point,
    Q,
    Rect,
    ZERO,
    cross,
    pt,
    validate_polygon,
)

DEFAULT_MAX_SECTIONS = 3
DEFAULT_MAX_BITS = 256


class SpecInvariantViolated(GeometryError):
    pass


class SectionOutOfRange(GeometryError):
    pass


def max_bits() -> int:
    raw = os.environ.get("BEACON_ROUTE_MAX_BITS")
    return int(raw) if raw else DEFAULT_MAX_BITS


# --------------------------------------------------------------------------
# specification


def default_lengths(r: int) -> list[int]:
    if r < 1:
        raise SpecInvariantViolated(f"section count must be positive, got {r}")
    return [2 ** (k * k) for k in range(1, 3 * r + 2)]


def _l(lengths: Sequence[int], k: int) -> int:
    return lengths[k - 1]


def spiral_condition_failures(lengths: Sequence[int]) -> list[int]:
    return [j for j in range(3, len(lengths)) if not _l(lengths, j) > _l(lengths, j - 2) + 2]


def length_inequality_holds(lengths: Sequence[int], i: int) -> bool:
    l1, l2, l3, l4 = (_l(lengths, k) for k in (3 * i - 2, 3 * i - 1, 3 * i, 3 * i + 1))
    # l4 > 4 l3 (l2 + 1) / l1, kept in integers
    return l4 * l1 > 4 * l3 * (l2 + 1)


@dataclass(frozen=True)
class SpiralSpec:
    r: int
    lengths: tuple[int, ...]

    @classmethod
    def default(cls, r: int) -> "SpiralSpec":
        return cls(r, tuple(default_lengths(r)))

    def violations(self) -> list[str]:
        out = []
        if self.r < 1:
            out.append(f"section count {self.r} < 1")
        if len(self.lengths) != 3 * self.r + 1:
            out.append(f"expected {3 * self.r + 1} lengths, got {len(self.lengths)}")
            return out
        if any(l <= 0 for l in self.lengths):
            out.append("lengths must be positive")
        for j in spiral_condition_failures(self.lengths):
            out.append(f"spiral condition fails at j={j}")
        for i in range(1, self.r + 1):
            if not length_inequality_holds(self.lengths, i):
                out.append(f"length inequality fails in section {i}")
        return out

    def validate(self, check_length_inequality: bool = True) -> None:
        bad = self.violations()
        if not check_length_inequality:
            bad = [v for v in bad if not v.startswith("length inequality")]
        if bad:
            raise SpecInvariantViolated("; ".join(bad))


@dataclass(frozen=True)
class LengthReport:
    section: int
    lhs: int
    rhs_num: int          # rhs = rhs_num / rhs_den
    rhs_den: int
    holds: bool


def check_length_inequality(spec: SpiralSpec) -> list[LengthReport]:
    out = []
    for i in range(1, spec.r + 1):
        l1, l2, l3, l4 = (_l(spec.lengths, k) for k in (3 * i - 2, 3 * i - 1, 3 * i, 3 * i + 1))
        out.append(LengthReport(i, l4, 4 * l3 * (l2 + 1), l1, length_inequality_holds(spec.lengths, i)))
    return out


def exponent_law_holds(kmax: int) -> bool:
    """``m_k = k^2`` satisfies ``m_k >= 3 + m_{k-1} + m_{k-2} - m_{k-3}`` for 4 <= k <= kmax."""
    m = lambda k: k * k  # noqa: E731
    return all(m(k) >= 3 + m(k - 1) + m(k - 2) - m(k - 3) for k in range(4, kmax + 1))


# --------------------------------------------------------------------------
# geometry


def _left(d: Point) -> Point:
    return Point(-d.y, d.x)


def _cw(d: Point) -> Point:
    return Point(d.y, -d.x)


@dataclass(frozen=True)
class SectionGeometry:
    index: int
    corners: dict[int, Rect]          # C_k for k = 3i-2, 3i-1, 3i
    hallways: dict[int, Rect]         # H_k for k = 3i-1, 3i
    half_plus: Rect                   # H+_{3i-2}
    half_minus: Rect                  # H-_{3i+1}
    m_in: dict[int, Point]
    m_out: dict[int, Point]
    reflex: dict[int, Point]
    convex: dict[int, Point]

    def pieces(self) -> list[Rect]:
        return [self.half_plus, *self.corners.values(), *self.hallways.values(), self.half_minus]


@dataclass(frozen=True)
class Spiral:
    spec: SpiralSpec
    poly: OrthoPolygon
    r_chain: tuple[Point, ...]        # r_0 .. r_{3r+1}
    c_chain: tuple[Point, ...]        # c_0 .. c_{3r+1}; the two ends are the cap corners
    dirs: tuple[Point, ...]           # dirs[k] = direction of r_{k-1} -> r_k, k >= 1
    sections: tuple[SectionGeometry, ...] = field(default=())

    @property
    def K(self) -> int:
        return 3 * self.spec.r + 1

    def hallway(self, k: int) -> Rect:
        return Rect.from_corners(self.r_chain[k - 1], self.r_chain[k] + _left(self.dirs[k]))

    def corner(self, k: int) -> Rect:
        return Rect.from_corners(self.r_chain[k], self.c_chain[k])

    def m_in(self, k: int) -> Point:
        a, b = self.r_chain[k - 1], self.r_chain[k]
        return Point((a.x + b.x) / 2, (a.y + b.y) / 2)

    def m_out(self, k: int) -> Point:
        a, b = self.c_chain[k - 1], self.c_chain[k]
        return Point((a.x + b.x) / 2, (a.y + b.y) / 2)

    def half(self, k: int, plus: bool) -> Rect:
        """Half of ``H_k`` cut by the perpendicular through ``m_in(k)``."""
        mid = self.m_in(k)
        far = self.r_chain[k] if plus else self.r_chain[k - 1]
        return Rect.from_corners(mid, far + _left(self.dirs[k]))

    def end_halves(self) -> tuple[Rect, Rect]:
        return self.half(1, plus=False), self.half(self.K, plus=True)


def generate_spiral(spec: SpiralSpec, check_length_inequality: bool = True,
                    allow_large: bool = False) -> Spiral:
    spec.validate(check_length_inequality)
    if spec.r > DEFAULT_MAX_SECTIONS and not allow_large:
        raise SpecInvariantViolated(
            f"r={spec.r} exceeds the default cap of {DEFAULT_MAX_SECTIONS}; pass allow_large")
    cap = max_bits()
    if sum(spec.lengths).bit_length() > cap:
        raise SpecInvariantViolated(f"coordinates would exceed {cap} bits (BEACON_ROUTE_MAX_BITS)")

    K = 3 * spec.r + 1
    d = Point(Q(1), ZERO)
    dirs: list[Point] = [d]   # dirs[0] unused placeholder
    r_chain = [pt(-spec.lengths[0], 0)]
    for k in range(1, K + 1):
        if k > 1:
            d = _cw(d)
        dirs.append(d)
        r_chain.append(r_chain[-1] + d.scale(_l(spec.lengths, k)))
    c_chain = [r_chain[0] + _left(dirs[1])]
    for k in range(1, K):
        c_chain.append(r_chain[k] + _left(dirs[k]) + _left(dirs[k + 1]))
    c_chain.append(r_chain[K] + _left(dirs[K]))

    verts = r_chain + c_chain[::-1]
    poly = validate_polygon(verts)
    if poly.vertices[0] != r_chain[0] or poly.vertices[1] != r_chain[1]:
        raise SpecInvariantViolated("generated spiral is not counterclockwise")
    sp = Spiral(spec, poly, tuple(r_chain), tuple(c_chain), tuple(dirs))
    secs = tuple(_section(sp, i) for i in range(1, spec.r + 1))
    return Spiral(spec, poly, sp.r_chain, sp.c_chain, sp.dirs, secs)


def _section(sp: Spiral, i: int) -> SectionGeometry:
    ks = (3 * i - 2, 3 * i - 1, 3 * i)
    return SectionGeometry(
        index=i,
        corners={k: sp.corner(k) for k in ks},
        hallways={k: sp.hallway(k) for k in ks[1:]},
        half_plus=sp.half(3 * i - 2, plus=True),
        half_minus=sp.half(3 * i + 1, plus=False),
        m_in={k: sp.m_in(k) for k in range(3 * i - 2, 3 * i + 2)},
        m_out={k: sp.m_out(k) for k in range(3 * i - 2, 3 * i + 2)},
        reflex={k: sp.r_chain[k] for k in ks},
        convex={k: sp.c_chain[k] for k in ks},
    )


# --------------------------------------------------------------------------
# witnesses


def _check_section(sp: Spiral, i: int) -> None:
    if not 1 <= i <= sp.spec.r:
        raise SectionOutOfRange(f"section {i} not in 1..{sp.spec.r}")


def _clip(poly: list[Point], a: Point, b: Point, keep: int) -> list[Point]:
    """Clip a convex polygon to the closed side ``keep`` (+1 left, -1 right) of line ``ab``."""
    out: list[Point] = []
    n = len(poly)
    for j in range(n):
        p, q = poly[j], poly[(j + 1) % n]
        sp_, sq = cross(a, b, p) * keep, cross(a, b, q) * keep
        if sp_ >= 0:
            out.append(p)
        if (sp_ > 0 > sq) or (sp_ < 0 < sq):
            t = sp_ / (sp_ - sq)
            out.append(Point(p.x + (q.x - p.x) * t, p.y + (q.y - p.y) * t))
    dedup: list[Point] = []
    for p in out:
        if not dedup or dedup[-1] != p:
            dedup.append(p)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


def _centroid(poly: list[Point]) -> Point:
    a2 = cx = cy = ZERO
    n = len(poly)
    for j in range(n):
        p, q = poly[j], poly[(j + 1) % n]
        w = p.x * q.y - q.x * p.y
        a2 += w
        cx += (p.x + q.x) * w
        cy += (p.y + q.y) * w
    return Point(cx / (3 * a2), cy / (3 * a2))


def _square(r: Rect) -> list[Point]:
    return [r.lo, Point(r.hi.x, r.lo.y), r.hi, Point(r.lo.x, r.hi.y)]


def _side_toward(a: Point, b: Point, p: Point) -> int:
    s = cross(a, b, p)
    return (s > 0) - (s < 0)


def _after_line(sp: Spiral, i: int) -> tuple[Point, Point, int]:
    """Line through the middle reflex vertex and the exit midpoint, plus the sign of the corner's side."""
    k = 3 * i - 1
    a, b = sp.r_chain[k], sp.m_out(3 * i + 1)
    return a, b, _side_toward(a, b, sp.c_chain[k])


def witness_probe(sp: Spiral, i: int, robot_below_line: bool) -> Point:
    """Centroid of the part of the middle corner square on the chosen side of the exit line."""
    _check_section(sp, i)
    a, b, cside = _after_line(sp, i)
    keep = cside if robot_below_line else -cside
    return _centroid(_clip(_square(sp.corner(3 * i - 1)), a, b, keep))


def witness_stuck(sp: Spiral, i: int, robot_below_line: bool) -> AttractionPath:
    _check_section(sp, i)
    p = witness_probe(sp, i, robot_below_line)
    return attraction_path(sp.poly, p, sp.m_out(3 * i + 1))


def witness_indeterminate(sp: Spiral, i: int, beacon: Optional[Point] = None) -> TerminalStatus:
    _check_section(sp, i)
    k = 3 * i - 1
    q = sp.m_out(3 * i + 1) if beacon is None else beacon
    return attraction_path(sp.poly, sp.r_chain[k], q).terminal


@dataclass(frozen=True)
class RegionReport:
    section: int
    vertices: tuple[Point, ...]
    single_point: bool


def region_between_lines(sp: Spiral, i: int) -> RegionReport:
    """Points of the middle corner square allowed by both exit lines (closed half-planes)."""
    _check_section(sp, i)
    k = 3 * i - 1
    rk = sp.r_chain[k]
    a, b, cside = _after_line(sp, i)
    region = _clip(_square(sp.corner(k)), a, b, -cside)
    b2 = sp.m_out(3 * i - 2)
    c2 = _side_toward(rk, b2, sp.c_chain[k])
    if region:
        region = _clip(region, rk, b2, c2)
    verts = tuple(dict.fromkeys(region))
    return RegionReport(i, verts, verts == (rk,))


@dataclass
class SpiralCertificate:
    r: int
    n: int
    lengths: list[int]
    length_inequality: list[bool]
    region_single_point: list[bool]
    stuck_below: list[str]
    reached_above: list[str]
    indeterminate: list[str]
    exponent_law: bool

    @property
    def ok(self) -> bool:
        return (
            self.n == 6 * self.r + 4
            and all(self.length_inequality)
            and all(self.region_single_point)
            and all(s.startswith("stuck") for s in self.stuck_below)
            and all(s == "reached" for s in self.reached_above)
            and all(s == "indeterminate" for s in self.indeterminate)
            and self.exponent_law
        )


def certify(sp: Spiral) -> SpiralCertificate:
    rs = range(1, sp.spec.r + 1)
    return SpiralCertificate(
        r=sp.spec.r,
        n=sp.poly.n,
        lengths=list(sp.spec.lengths),
        length_inequality=[x.holds for x in check_length_inequality(sp.spec)],
        region_single_point=[region_between_lines(sp, i).single_point for i in rs],
        stuck_below=[witness_stuck(sp, i, True).terminal.status.value for i in rs],
        reached_above=[witness_stuck(sp, i, False).terminal.status.value for i in rs],
        indeterminate=[witness_indeterminate(sp, i).status.value for i in rs],
        exponent_law=exponent_law_holds(sp.K),
    )
