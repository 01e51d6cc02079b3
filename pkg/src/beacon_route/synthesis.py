"""Beacon placement by repeated reduction of the rooted dual tree.

Each step looks at a deepest leaf ``L`` and its ancestors ``A1, A2, A3``,
reflects the neighbourhood into a canonical frame, removes a few
rectangles and places at most two beacons for every three removed.  When the
tree is shallow a direct basis placement finishes the job.

Canonical frames: for two-level cases ``A2`` is a top right neighbour of the
rectangle being cut (``A1``); for three-level cases ``A3`` is a top right
neighbour of ``A2``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .decomposition import (
    Decomposition,
    InternalInconsistency,
    RootedDualTree,
    root_at_leaf,
    vertical_decomposition,
)
from .geometry import (
    GeometryError,
    OrthoPolygon,
    Point,
    Rect,
    X_HAT,
    Y_HAT,
    compute_epsilon,
)


class NoCaseMatched(RuntimeError):
    """The local configuration fits none of the reduction cases."""

    def __init__(self, message: str, dump: dict):
        super().__init__(message)
        self.dump = dump


class DepthTooLarge(ValueError):
    pass


class NotPairedCut(GeometryError):
    pass


class Role(Enum):
    COVER = "cover"
    CONNECTOR = "connector"
    REPAIR = "repair"


@dataclass(frozen=True)
class Frame:
    """One of the four axis reflections; each is its own inverse."""

    fx: int = 1
    fy: int = 1

    @property
    def name(self) -> str:
        return {(1, 1): "identity", (-1, 1): "flip-x", (1, -1): "flip-y", (-1, -1): "flip-both"}[
            (self.fx, self.fy)
        ]

    def point(self, p: Point) -> Point:
        return Point(p.x * self.fx, p.y * self.fy)

    def rect(self, r: Rect) -> Rect:
        return Rect.from_corners(self.point(r.lo), self.point(r.hi))


@dataclass(frozen=True)
class Placement:
    point: Point
    role: Role
    covers: tuple[int, ...] = ()


@dataclass(frozen=True)
class ReductionStep:
    case_id: str
    removed: tuple[int, ...]
    placed: tuple[Placement, ...]
    symmetry: str
    leaf: Optional[int] = None
    absorbed: tuple[Point, ...] = ()   # reflex vertices counted with the cut-off region

    @property
    def s(self) -> int:
        return len(self.removed)

    @property
    def b(self) -> int:
        return len(self.placed)


@dataclass(frozen=True)
class BeaconSet:
    beacons: tuple[Point, ...]
    provenance: tuple[tuple[int, Role], ...]   # (step index, role); basis step is last

    def __len__(self) -> int:
        return len(self.beacons)

    def __iter__(self):
        return iter(self.beacons)


@dataclass
class SynthesisState:
    d: Decomposition
    eps: object
    live: set[int]
    root: int
    placed: list[tuple[Placement, int]] = field(default_factory=list)
    steps: list[ReductionStep] = field(default_factory=list)

    @classmethod
    def start(cls, poly: OrthoPolygon) -> "SynthesisState":
        d = vertical_decomposition(poly)
        tree = root_at_leaf(d)
        return cls(d, compute_epsilon(poly), set(tree.nodes), tree.root)

    @property
    def tree(self) -> RootedDualTree:
        return root_at_leaf(self.d, self.live, self.root)

    def dump(self) -> dict:
        t = self.tree
        return {
            "live": sorted(self.live),
            "root": self.root,
            "parent": {k: v for k, v in sorted(t.parent.items())},
            "rects": {i: (str(self.d.rects[i].lo), str(self.d.rects[i].hi)) for i in sorted(self.live)},
            "steps": [s.case_id for s in self.steps],
        }


# --------------------------------------------------------------------------
# canonical view


class View:
    """Neighbourhood of the live tree seen through a reflection."""

    def __init__(self, st: SynthesisState, frame: Frame):
        self.st = st
        self.d = st.d
        self.f = frame
        self.tree = st.tree
        self.eps = st.eps
        self._rects: dict[int, Rect] = {}

    def rect(self, i: int) -> Rect:
        r = self._rects.get(i)
        if r is None:
            r = self._rects[i] = self.f.rect(self.d.rects[i])
        return r

    def right_of(self, R: int, S: int) -> bool:
        return self.rect(S).lo.x == self.rect(R).hi.x

    def tall(self, R: int, S: int) -> bool:
        """``S`` is a tall neighbour of ``R``."""
        return self.rect(S).height > self.rect(R).height

    def shares_top(self, R: int, S: int) -> bool:
        return self.rect(S).hi.y == self.rect(R).hi.y

    def reflex(self, R: int, S: int) -> Point:
        return self.f.point(self.d.shared_vertical(R, S).reflex_vertex)

    def vmid(self, R: int, S: int) -> Point:
        return self.f.point(self.d.shared_vertical(R, S).midpoint)

    def children(self, R: int) -> tuple[int, ...]:
        return self.tree.children[R]

    def side_nbrs(self, R: int, right: bool) -> list[int]:
        return [S for S in self.d.neighbors[R] if S in self.st.live and self.right_of(R, S) == right]

    def paired(self, R: int, S: int) -> bool:
        """``S`` is one of two short live neighbours of ``R`` on its side."""
        if self.tall(R, S):
            return False
        return len(self.side_nbrs(R, self.right_of(R, S))) == 2

    def place(self, p: Point, role: Role, covers=()) -> Placement:
        return Placement(self.f.point(p), role, tuple(sorted(covers)))

    # corners of a rectangle in the canonical frame
    def ul(self, i):
        r = self.rect(i)
        return Point(r.lo.x, r.hi.y)

    def ur(self, i):
        return self.rect(i).hi

    def ll(self, i):
        return self.rect(i).lo

    def lr(self, i):
        r = self.rect(i)
        return Point(r.hi.x, r.lo.y)


def frame_for(d: Decomposition, lower: int, upper: int) -> Frame:
    """Reflection that makes ``upper`` a top right neighbour of ``lower``."""
    a, b = d.rects[lower], d.rects[upper]
    fx = 1 if b.lo.x == a.hi.x else -1
    fy = 1 if b.hi.y == a.hi.y else -1
    return Frame(fx, fy)


# --------------------------------------------------------------------------
# two-level cases (cut A1's subtree from A2)


def _two_level(st: SynthesisState, A1: int, A2: int):
    v = View(st, frame_for(st.d, A1, A2))
    e = st.eps
    ex, ey = X_HAT.scale(e), Y_HAT.scale(e)
    kids = list(v.children(A1))
    r12 = v.reflex(A1, A2)
    if v.tall(A1, A2):
        # A1's right side is entirely the chord; every child is on the left
        repair_role = Role.REPAIR if v.paired(A2, A1) else None
        if len(kids) == 2:
            upper = max(kids, key=lambda k: v.rect(k).hi.y)
            b1 = v.place(v.reflex(A1, upper) + ex, Role.COVER, kids + [A1])
            b2 = v.place(r12 + ex, repair_role or Role.CONNECTOR)
            return "two_tall_two_kids", kids + [A1], [b1, b2], v
        (K,) = kids
        if not v.shares_top(A1, K):
            b1 = v.place(r12 + ex, repair_role or Role.COVER, [K, A1])
            return "two_tall_lower_left", [K, A1], [b1], v
        if not v.tall(A1, K):
            b1 = v.place(r12 + ex, repair_role or Role.COVER, [K, A1])
            return "two_tall_upper_left", [K, A1], [b1], v
        return None  # Type I, deferred
    if not v.paired(A1, A2):
        # solo: A2's lower-left corner is the reflex vertex q
        if len(kids) == 2:
            upper = max(kids, key=lambda k: v.rect(k).hi.y)
            b1 = v.place(v.reflex(A1, upper) + ex, Role.COVER, kids + [A1])
            b2 = v.place(r12 + ey, Role.CONNECTOR)
            return "two_solo_two", kids + [A1], [b1, b2], v
        (K,) = kids
        b1 = v.place(r12 + ey, Role.COVER, [K, A1])
        return "two_solo_one", [K, A1], [b1], v
    # paired: the lower right neighbour is a leaf child
    if len(kids) == 1:
        return None  # Type II, deferred
    t, u = v.ll(A1), v.ur(A1)
    lower_right = [k for k in kids if v.right_of(A1, k)]
    left = [k for k in kids if not v.right_of(A1, k)]
    cov1 = [A1] + lower_right
    cov2 = []
    for k in left:
        if v.shares_top(A1, k) and not v.tall(A1, k):
            cov2.append(k)
        else:
            cov1.append(k)
    b1 = v.place(t + ey, Role.COVER, cov1)
    b2 = v.place(u - ey, Role.COVER if cov2 else Role.CONNECTOR, cov2)
    case = "two_paired_three" if len(kids) == 3 else "two_paired_two"
    return case, kids + [A1], [b1, b2], v


# --------------------------------------------------------------------------
# three-level cases (around A2, with A3 its parent)


def _subtree_type(v: View, A2: int, C: int) -> str:
    gk = v.children(C)
    if not gk:
        return "IV" if v.tall(A2, C) else "III"
    if len(gk) != 1:
        return "?"
    (Lc,) = gk
    if v.tall(C, A2) and v.tall(C, Lc) and v.shares_top(C, A2) == v.shares_top(C, Lc):
        return "I"
    if not v.tall(C, A2) and not v.tall(C, Lc) and v.right_of(C, A2) == v.right_of(C, Lc):
        return "II"
    return "?"


def _three_level(st: SynthesisState, A2: int, A3: int):
    v = View(st, frame_for(st.d, A2, A3))
    e = st.eps
    ex, ey = X_HAT.scale(e), Y_HAT.scale(e)
    kids = list(v.children(A2))
    types = {C: _subtree_type(v, A2, C) for C in kids}
    if "?" in types.values():
        return None
    leaf = {C: v.children(C)[0] for C in kids if v.children(C)}
    right = [C for C in kids if v.right_of(A2, C)]
    lr = right[0] if right else None
    u, t = v.ur(A2), v.lr(A2)
    by_type: dict[str, list[int]] = {}
    for C in kids:
        by_type.setdefault(types[C], []).append(C)

    if "II" in by_type:
        (A1,) = by_type["II"]
        L = leaf[A1]
        b1 = v.place(v.reflex(A2, A1) - ex, Role.COVER, [L, A1, A2])
        if lr is None:
            if v.tall(A2, A3):
                rep = Role.REPAIR if v.paired(A3, A2) else Role.CONNECTOR
                b2 = v.place(v.reflex(A2, A3) + ex, rep)
                return "type_ii_tall_a3", [L, A1, A2], [b1, b2], v
            b2 = v.place(u - ey, Role.CONNECTOR)
            return "type_ii_short_a3", [L, A1, A2], [b1, b2], v
        if types[lr] == "I":
            Lp = leaf[lr]
            b1 = v.place(v.reflex(A2, A1) - ex, Role.COVER, [L, A1])
            b2 = v.place(u - ey, Role.COVER, [A2])
            b3 = v.place(v.reflex(A2, lr) - ey, Role.COVER, [lr, Lp])
            return "type_ii_lower_right_i", [L, A1, lr, Lp, A2], [b1, b2, b3], v
        if types[lr] == "III":
            b1 = v.place(v.reflex(A2, A1) - ex, Role.COVER, [L, A1])
            b2 = v.place(v.reflex(A2, lr) - ex, Role.REPAIR, [lr])
            return "type_ii_lower_right_iii", [L, A1, lr], [b1, b2], v
        return None

    if "IV" in by_type:
        (Lp,) = by_type["IV"]
        if lr is None or types[lr] != "I":
            return None
        A1, L = lr, leaf[lr]
        b1 = v.place(v.vmid(A2, A1), Role.COVER, [A1, L])
        b2 = v.place(v.vmid(A2, A3), Role.COVER, [Lp, A2])
        return "type_iv", [Lp, A1, L, A2], [b1, b2], v

    n1 = len(by_type.get("I", ()))
    n3 = len(by_type.get("III", ()))
    if n1 == 0:
        return None
    if n3 == 0 or (n1 == 2 and n3 == 1):
        placed = []
        removed = [A2]
        for C in sorted(kids):
            cov = [C] + ([leaf[C]] if C in leaf else [])
            placed.append(v.place(v.vmid(A2, C), Role.COVER, cov))
            removed += cov
        if v.tall(A2, A3) and v.paired(A3, A2):
            # the cut of A2 from A3 can trap paths; the A3-side beacon goes to repair position
            placed.append(v.place(v.reflex(A2, A3) + ex, Role.REPAIR, [A2]))
        else:
            placed.append(v.place(v.vmid(A2, A3), Role.COVER, [A2]))
        case = "all_type_i" if n3 == 0 else "two_i_one_iii"
        return case, removed, placed, v

    (A1,) = by_type["I"]
    L = leaf[A1]
    threes = by_type["III"]
    if not v.right_of(A2, A1):
        # Type I on the left, together with a Type III on the left or lower right
        left3 = [C for C in threes if not v.right_of(A2, C)]
        if left3:
            (Lp,) = left3
            s, q = v.ul(A2), v.ll(A2)
            top_is_a1 = v.shares_top(A2, A1)
            b1 = v.place(s - ey, Role.COVER, [A1, L, A2] if top_is_a1 else [Lp])
            b2 = v.place(q + ey, Role.COVER, [Lp] if top_is_a1 else [A1, L, A2])
            case = "one_three_left" if n3 == 1 else "one_three_three_left"
            return case, [L, A1, Lp], [b1, b2], v
        (Lp,) = threes
        b1 = v.place(v.vmid(A2, A1), Role.COVER, [A1, L])
        b2 = v.place(v.reflex(A2, Lp) - ex, Role.REPAIR, [Lp])
        return "one_three_right_iii", [L, A1, Lp], [b1, b2], v
    # Type I on the lower right; every Type III is on the left
    cov1, cov2 = [A2, A1, L], []
    for C in threes:
        (cov2 if v.shares_top(A2, C) else cov1).append(C)
    b1 = v.place(t + ey, Role.COVER, cov1)
    b2 = v.place(u - ey, Role.COVER if cov2 else Role.CONNECTOR, cov2)
    case = "one_three_right_i" if n3 == 1 else "one_three_three_right"
    return case, [A2, A1, L] + threes, [b1, b2], v


# --------------------------------------------------------------------------
# driver


def repair_position(st: SynthesisState, attachment: int, detached: int) -> Point:
    """Point beside the reflex vertex shared by ``attachment`` and a cut paired neighbour."""
    return repair_point(st.d, st.eps, attachment, detached)


def repair_point(d: Decomposition, eps, attachment: int, detached: int) -> Point:
    if d.rects[detached].height >= d.rects[attachment].height:
        raise NotPairedCut(f"{detached} is not a short neighbour of {attachment}", (detached,))
    r = d.shared_vertical(attachment, detached).reflex_vertex
    if d.rects[detached].hi.x == d.rects[attachment].lo.x:
        return r + X_HAT.scale(eps)
    return r - X_HAT.scale(eps)


def required_repairs(d: Decomposition, live: set[int], removed: set[int]) -> list[tuple[int, int]]:
    """(attachment, detachment) pairs whose cut can trap inductive paths."""
    out = []
    for T in sorted(removed):
        for R in d.neighbors[T]:
            if R not in live or R in removed:
                continue
            if d.rects[T].height >= d.rects[R].height:
                continue
            left = d.rects[T].hi.x == d.rects[R].lo.x
            same_side = [
                S for S in d.neighbors[R]
                if S in live and (d.rects[S].hi.x == d.rects[R].lo.x) == left
            ]
            if len(same_side) == 2 and all(d.rects[S].height < d.rects[R].height for S in same_side):
                other = same_side[0] if same_side[1] == T else same_side[1]
                if other not in removed:
                    out.append((R, T))
    return out


def absorbed_vertices(d: Decomposition, live: set[int], removed: set[int]) -> list[Point]:
    """Reflex vertices a taller detachment rectangle takes with it."""
    out = []
    for T in sorted(removed):
        for R in d.neighbors[T]:
            if R in live and R not in removed and d.rects[T].height > d.rects[R].height:
                out.append(d.shared_vertical(R, T).reflex_vertex)
    return out


def apply_reduction(st: SynthesisState) -> ReductionStep:
    tree = st.tree
    if tree.height < 3:
        raise DepthTooLarge("reductions need a tree of depth at least three")
    L = tree.deepest_leaf()
    A1 = tree.parent[L]
    A2 = tree.parent[A1]
    A3 = tree.parent[A2]
    order = [A1] + [C for C in tree.children[A2] if C != A1 and tree.children[C]]
    res = None
    for C in order:
        res = _two_level(st, C, A2)
        if res is not None:
            break
    if res is None:
        res = _three_level(st, A2, A3)
    if res is None:
        raise NoCaseMatched(f"no reduction applies at leaf {L}", st.dump())
    case, removed, placed, view = res
    removed_set = set(removed)
    step = ReductionStep(
        case_id=case,
        removed=tuple(sorted(removed_set)),
        placed=tuple(placed),
        symmetry=view.f.name,
        leaf=L,
        absorbed=tuple(absorbed_vertices(st.d, st.live, removed_set)),
    )
    k = len(st.steps)
    st.steps.append(step)
    st.placed.extend((p, k) for p in placed)
    st.live -= removed_set
    return step


def basis_case(st: SynthesisState) -> list[Placement]:
    tree = st.tree
    if tree.height > 2:
        raise DepthTooLarge(f"basis needs depth <= 2, got {tree.height}")
    if tree.height < 2:
        return []
    A2 = tree.root
    (A1,) = tree.children[A2]
    v = View(st, frame_for(st.d, A1, A2))
    e = st.eps
    ex, ey = X_HAT.scale(e), Y_HAT.scale(e)
    kids = list(v.children(A1))
    everyone = kids + [A1, A2]
    if len(kids) == 1:
        (K,) = kids
        if v.right_of(A1, K):
            return [v.place(v.reflex(A1, A2) - ex, Role.COVER, everyone)]
        return [v.place(v.vmid(A1, A2), Role.COVER, everyone)]
    nbrs = kids + [A2]
    tall = [S for S in nbrs if v.tall(A1, S)]
    if tall:
        (T,) = tall
        paired_right = not v.right_of(A1, T)
        pair = [S for S in nbrs if S != T]
        upper = max(pair, key=lambda S: v.rect(S).hi.y)
        r = v.reflex(A1, upper)
        return [v.place(r - ex if paired_right else r + ex, Role.COVER, everyone)]
    lower = [k for k in kids if not v.shares_top(A1, k)]
    lower_left = [k for k in lower if not v.right_of(A1, k)]
    w = v.ll(A1) if lower_left else v.lr(A1)
    top = [k for k in kids if v.shares_top(A1, k)] + [A1, A2]
    return [
        v.place(v.ur(A1) - ey, Role.COVER, top),
        v.place(w + ey, Role.COVER, lower),
    ]


def synthesize(poly: OrthoPolygon) -> tuple[BeaconSet, list[ReductionStep], SynthesisState]:
    """Reduce until the tree is shallow, then place the basis beacons.

    Returns the beacon set, the trace (the basis appears as a final step with
    case id ``basis``) and the final state.
    """
    st = SynthesisState.start(poly)
    while st.tree.height >= 3:
        apply_reduction(st)
    before = set(st.live)
    placed = basis_case(st)
    k = len(st.steps)
    st.steps.append(ReductionStep("basis", tuple(sorted(before)), tuple(placed), "identity"))
    st.placed.extend((p, k) for p in placed)
    st.live = set()
    beacons = BeaconSet(
        tuple(p.point for p, _ in st.placed),
        tuple((k, p.role) for p, k in st.placed),
    )
    return beacons, st.steps, st


# --------------------------------------------------------------------------
# budget


@dataclass(frozen=True)
class BudgetReport:
    total: int
    bound: int
    violations: tuple[str, ...]
    histogram: dict

    @property
    def ok(self) -> bool:
        return not self.violations


def check_budget(trace: list[ReductionStep], n: int) -> BudgetReport:
    """Per-step ``b <= floor(2s/3)`` and the global ``floor((n-4)/3)`` bound."""
    bad = []
    for k, step in enumerate(trace):
        if step.case_id == "basis":
            live = step.s
            cap = (2 * live + 2 - 4) // 3 if live else 0
            if step.b > cap:
                bad.append(f"step {k} (basis): {step.b} beacons for {live} rectangles")
        elif step.b > (2 * step.s) // 3:
            bad.append(f"step {k} ({step.case_id}): {step.b} beacons for {step.s} rectangles")
    total = sum(s.b for s in trace)
    bound = (n - 4) // 3
    if total > bound:
        bad.append(f"total {total} exceeds {bound}")
    return BudgetReport(total, bound, tuple(bad), dict(Counter(s.case_id for s in trace)))
