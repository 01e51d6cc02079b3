"""Replay-based checks that a beacon set really routes."""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .attraction import AttractionPath, attraction_path, is_local
from .decomposition import Decomposition, polygon_from_rects, root_at_leaf
from .geometry import Containment, OrthoPolygon, Point, Q, compute_epsilon
from .synthesis import ReductionStep, repair_point, required_repairs


@dataclass(frozen=True)
class AttractionDigraph:
    nodes: tuple[Point, ...]
    # succ[i] = indices j such that a beacon at node j attracts a robot at node i
    succ: tuple[frozenset, ...]

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.succ[i]

    def strongly_connected_components(self) -> list[list[int]]:
        n = len(self.nodes)
        reach = [self._reach(i) for i in range(n)]
        seen, comps = set(), []
        for i in range(n):
            if i in seen:
                continue
            comp = [j for j in range(n) if j in reach[i] and i in reach[j]]
            seen.update(comp)
            comps.append(comp)
        return comps

    def _reach(self, i: int) -> set[int]:
        out, todo = {i}, [i]
        while todo:
            u = todo.pop()
            for w in self.succ[u]:
                if w not in out:
                    out.add(w)
                    todo.append(w)
        return out


def build_attraction_digraph(poly: OrthoPolygon, points: Sequence[Point],
                             d: Optional[Decomposition] = None,
                             require_local: bool = False) -> AttractionDigraph:
    pts = tuple(points)
    succ = []
    for i, u in enumerate(pts):
        row = set()
        for j, v in enumerate(pts):
            if i == j:
                row.add(j)
                continue
            path = attraction_path(poly, u, v)
            if path.reached and (not require_local or is_local(path, d)):
                row.add(j)
        succ.append(frozenset(row))
    return AttractionDigraph(pts, tuple(succ))


@dataclass(frozen=True)
class RoutingPlan:
    source: Point
    target: Point
    beacons: tuple[int, ...]          # indices into the beacon list, activation order
    hops: tuple[AttractionPath, ...]

    @property
    def intermediates(self) -> int:
        return len(self.beacons)


def find_routing(poly: OrthoPolygon, beacons: Sequence[Point], p: Point, q: Point,
                 d: Optional[Decomposition] = None,
                 require_local: bool = False) -> Optional[RoutingPlan]:
    """Shortest activation sequence taking a robot from ``p`` to ``q``; ``None`` if there is none.

    Ties go to the lexicographically smallest beacon index sequence, which
    BFS in index order produces naturally.
    """
    B = list(beacons)
    cache: dict[tuple[Point, Point], AttractionPath] = {}

    def hop(u: Point, target: Point) -> Optional[AttractionPath]:
        key = (u, target)
        if key not in cache:
            cache[key] = attraction_path(poly, u, target)
        path = cache[key]
        if path.reached and (not require_local or is_local(path, d)):
            return path
        return None

    # node -1 is p; beacons are 0..k-1
    prev: dict[int, Optional[int]] = {-1: None}
    queue = deque([-1])
    while queue:
        i = queue.popleft()
        u = p if i < 0 else B[i]
        if hop(u, q) is not None:
            seq = []
            while i is not None and i >= 0:
                seq.append(i)
                i = prev[i]
            seq.reverse()
            stops = [p] + [B[j] for j in seq] + [q]
            hops = tuple(hop(a, b) for a, b in zip(stops, stops[1:]))
            return RoutingPlan(p, q, tuple(seq), hops)
        for j in range(len(B)):
            if j not in prev and hop(u, B[j]) is not None:
                prev[j] = i
                queue.append(j)
    return None


# --------------------------------------------------------------------------
# samples


def _inward_diagonal(poly: OrthoPolygon, i: int) -> Point:
    vs = poly.vertices
    v, a, b = vs[i], vs[i - 1], vs[(i + 1) % len(vs)]

    def unit(w: Point) -> Point:
        return Point(Q((w.x > 0) - (w.x < 0)), Q((w.y > 0) - (w.y < 0)))

    s = unit(a - v) + unit(b - v)
    return s.scale(-1) if poly.reflex_flags[i] else s


def sample_points(poly: OrthoPolygon, d: Decomposition, seed: int, count: int) -> list[Point]:
    """Structural points plus ``count`` seeded random interior points."""
    eps = compute_epsilon(poly)
    out: list[Point] = [r.center for r in d.rects]
    out += [v + _inward_diagonal(poly, i).scale(eps / 2) for i, v in enumerate(poly.vertices)]
    out += [c.midpoint for c in d.verticals]
    out += random_interior_points(poly, seed, count, rects=d.rects)
    return out


def random_interior_points(poly: OrthoPolygon, seed: int, count: int, within=None,
                           rects=None) -> list[Point]:
    """Seeded interior points with dyadic coordinates.

    Sampling is uniform in ``within`` (default: the bounding box), or, given
    ``rects``, uniform in a uniformly chosen rectangle, which keeps thin
    corridors from starving the rejection loop.
    """
    rng = random.Random(seed)
    den = 1 << 20
    out = []
    while len(out) < count:
        if rects is not None:
            box = rects[rng.randrange(len(rects))]
        else:
            box = within if within is not None else poly.bbox
        p = Point(
            box.lo.x + box.width * Q(rng.randrange(1, den)) / den,
            box.lo.y + box.height * Q(rng.randrange(1, den)) / den,
        )
        if poly.index.classify(p) is Containment.INTERIOR:
            out.append(p)
    return out


# --------------------------------------------------------------------------
# all-pairs verification


@dataclass
class VerificationReport:
    pairs_checked: int
    failures: list = field(default_factory=list)
    nonlocal_pairs: int = 0     # pairs routable only with a non-local hop
    direct_pairs: int = 0       # pairs routed with no intermediate beacon

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def all_local(self) -> bool:
        return self.nonlocal_pairs == 0

    def as_dict(self) -> dict:
        return {
            "pairs_checked": self.pairs_checked,
            "failures": self.failures,
            "all_local": self.all_local,
            "nonlocal_pairs": self.nonlocal_pairs,
            "direct_pairs": self.direct_pairs,
        }


def verify_routing_set(poly: OrthoPolygon, d: Decomposition, beacons: Sequence[Point],
                       samples: Sequence[Point], require_local: bool = True) -> VerificationReport:
    """Check every ordered pair of ``samples`` for a routing through ``beacons``.

    Works on bitmasks: for each sample the set of beacons that pull it in,
    the set of beacons it pulls in, and the transitive closure of the beacon
    digraph.  A pair falls back to a direct attraction test only when no
    beacon route exists.
    """
    B = list(beacons)
    S = list(samples)
    k = len(B)

    def ok(path: AttractionPath) -> tuple[bool, bool]:
        if not path.reached:
            return False, False
        return True, is_local(path, d)

    # beacon closure
    adj_local = [0] * k
    adj_any = [0] * k
    for i in range(k):
        for j in range(k):
            if i == j:
                adj_local[i] |= 1 << j
                adj_any[i] |= 1 << j
                continue
            r, loc = ok(attraction_path(poly, B[i], B[j]))
            if r:
                adj_any[i] |= 1 << j
                if loc:
                    adj_local[i] |= 1 << j

    def closure(adj):
        reach = list(adj)
        changed = True
        while changed:
            changed = False
            for i in range(k):
                m = reach[i]
                acc = m
                j = 0
                while m:
                    if m & 1:
                        acc |= reach[j]
                    m >>= 1
                    j += 1
                if acc != reach[i]:
                    reach[i] = acc
                    changed = True
        return reach

    reach_local, reach_any = closure(adj_local), closure(adj_any)

    def spread(mask, reach):
        acc, j = 0, 0
        while mask:
            if mask & 1:
                acc |= reach[j]
            mask >>= 1
            j += 1
        return acc

    out_l, out_a, in_l, in_a = [], [], [], []
    for s in S:
        ol = oa = il = ia = 0
        for j, b in enumerate(B):
            r, loc = ok(attraction_path(poly, s, b))
            if r:
                oa |= 1 << j
                if loc:
                    ol |= 1 << j
            r, loc = ok(attraction_path(poly, b, s))
            if r:
                ia |= 1 << j
                if loc:
                    il |= 1 << j
        out_l.append(spread(ol, reach_local))
        out_a.append(spread(oa, reach_any))
        in_l.append(il)
        in_a.append(ia)

    rep = VerificationReport(0)
    for i, p in enumerate(S):
        for j, q in enumerate(S):
            if i == j:
                continue
            rep.pairs_checked += 1
            if out_l[i] & in_l[j]:
                continue
            direct = attraction_path(poly, p, q)
            r, loc = ok(direct)
            if r and (loc or not require_local):
                rep.direct_pairs += 1
                continue
            if not require_local and out_a[i] & in_a[j]:
                continue
            if out_a[i] & in_a[j] or r:
                rep.nonlocal_pairs += 1
                if not require_local:
                    continue
            rep.failures.append({
                "p": [str(p.x), str(p.y)],
                "q": [str(q.x), str(q.y)],
                "direct_terminal": direct.terminal.status.value,
                "direct_path": [[str(e.point.x), str(e.point.y)] for e in direct.events],
                "beacons_attracting_p": [b for b in range(k) if out_l[i] >> b & 1],
                "beacons_reaching_q": [b for b in range(k) if in_l[j] >> b & 1],
            })
    return rep


# --------------------------------------------------------------------------
# per-step conditions of the reduction


def check_step(d: Decomposition, root: int, live_before: set[int], step: ReductionStep,
               eps, seed: int = 0, per_rect: int = 50) -> list[str]:
    """Validate one reduction step inside the polygon it was applied to.

    Checks the layer bound, the repair condition, the strongly-connected
    component condition and that every beacon covers the rectangles it is
    credited with (sampled).
    """
    issues: list[str] = []
    removed = set(step.removed)
    live_after = live_before - removed
    Pk = polygon_from_rects(d, live_before)
    tree = root_at_leaf(d, live_before, root)
    if step.case_id != "basis":
        depths = {tree.depth[i] for i in removed}
        if max(depths) - min(depths) + 1 > 3:
            issues.append(f"{step.case_id}: removed rectangles span {sorted(depths)}")
        pts = {p.point for p in step.placed}
        for R, T in required_repairs(d, live_before, removed):
            want = repair_point(d, eps, R, T)
            if want not in pts:
                issues.append(f"{step.case_id}: missing repair beacon {want} for cut {T}|{R}")
        g = build_attraction_digraph(Pk, [p.point for p in step.placed])
        for comp in g.strongly_connected_components():
            if not any(_in_union(d, live_after, g.nodes[i]) for i in comp):
                issues.append(f"{step.case_id}: component {comp} has no point in the remaining polygon")
    for pl in step.placed:
        for rid in pl.covers:
            r = d.rects[rid]
            sample = [r.center] + random_interior_points(Pk, seed + rid, per_rect - 1, within=r)
            sample = [x for x in sample if r.contains(x)]
            for x in sample:
                a = attraction_path(Pk, x, pl.point)
                b = attraction_path(Pk, pl.point, x)
                if not (a.reached and b.reached and is_local(a, d, live_before) and is_local(b, d, live_before)):
                    issues.append(
                        f"{step.case_id}: beacon {pl.point} does not locally cover {x} of rect {rid} "
                        f"({a.terminal.status.value}/{b.terminal.status.value})"
                    )
                    break
    return issues


def _in_union(d: Decomposition, live: Iterable[int], p: Point) -> bool:
    return any(d.rects[i].contains(p) for i in live)
