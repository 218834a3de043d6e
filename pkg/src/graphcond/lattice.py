"""Regions of the triangular lattice and their dual graphs.

Lattice points are ``x*e1 + y*e2`` with ``e1`` pointing east and ``e2`` at 60
degrees, so horizontal lattice lines are ``y = const``.  The up-pointing cell
``(u, v, UP)`` has corners (u, v), (u+1, v), (u, v+1); the down-pointing cell
``(u, v, DOWN)`` has corners (u+1, v), (u, v+1), (u+1, v+1).  An up cell
(u, v) shares edges exactly with the down cells (u, v), (u-1, v), (u, v-1).

Every region family is cut out of a lattice hexagon described by its side
lengths clockwise from the top: N, NE, SE, S, SW, NW.  Up cells line the S,
NE and NW sides; down cells line N, SE and SW.  Positions along the S, NE and
NW sides are counted counterclockwise, from the south-west, east and
north-west corners respectively, starting at 0.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .graph import WeightedPlanarGraph, build_graph

UP = 0
DOWN = 1

__all__ = [
    "UP",
    "DOWN",
    "TriCell",
    "Region",
    "RegionError",
    "HexFrame",
    "MarkedRegion",
    "hexagon",
    "hexagon_sides",
    "eisenkolbl_region",
    "eisenkolbl_marked",
    "hstar_region",
    "t_region",
    "h_k_region",
    "h_star_strings",
    "h_kl_region",
    "h_prime_kl_region",
    "f_region",
    "augmented_region",
    "dual_graph",
    "count_tilings",
    "remove_forced",
    "outer_walk",
    "boundary_order",
    "canonical_key",
    "transform_region",
    "identify_shape",
    "region_from_spec",
    "render",
]


class RegionError(ValueError):
    pass


class TriCell(NamedTuple):
    u: int
    v: int
    orient: int  # UP or DOWN

    @property
    def is_up(self) -> bool:
        return self.orient == UP

    def neighbors(self) -> tuple["TriCell", "TriCell", "TriCell"]:
        """Edge-adjacent cells in counterclockwise order of direction."""
        u, v = self.u, self.v
        if self.orient == UP:
            # across the right edge (30 deg), left edge (150), bottom (270)
            return (TriCell(u, v, DOWN), TriCell(u - 1, v, DOWN), TriCell(u, v - 1, DOWN))
        # across the top (90 deg), left edge (210), right edge (330)
        return (TriCell(u, v + 1, UP), TriCell(u, v, UP), TriCell(u + 1, v, UP))

    def corners(self) -> tuple[tuple[int, int], ...]:
        u, v = self.u, self.v
        if self.orient == UP:
            return ((u, v), (u + 1, v), (u, v + 1))
        return ((u + 1, v), (u, v + 1), (u + 1, v + 1))

    def sweep_key(self) -> tuple[int, int]:
        return (self.v, 2 * self.u + self.orient)


def cell_from_corners(pts: Iterable[tuple[int, int]]) -> TriCell:
    pts = sorted(pts, key=lambda p: (p[1], p[0]))
    (x0, y0), (x1, y1), (x2, y2) = pts
    if y0 == y1:
        return TriCell(x0, y0, UP)
    return TriCell(x0 - 1, y0, DOWN)


@dataclass(frozen=True)
class Region:
    cells: frozenset

    def __init__(self, cells: Iterable[TriCell] = ()):
        object.__setattr__(self, "cells", frozenset(TriCell(*c) for c in cells))

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, c) -> bool:
        return c in self.cells

    def __iter__(self):
        return iter(sorted(self.cells, key=TriCell.sweep_key))

    @property
    def n_up(self) -> int:
        return sum(1 for c in self.cells if c.orient == UP)

    @property
    def n_down(self) -> int:
        return len(self.cells) - self.n_up

    @property
    def balanced(self) -> bool:
        return self.n_up == self.n_down

    def has_isolated_cell(self) -> bool:
        return any(all(nb not in self.cells for nb in c.neighbors()) for c in self.cells)

    def minus(self, cells: Iterable[TriCell]) -> "Region":
        cells = set(cells)
        missing = cells - self.cells
        if missing:
            raise RegionError(f"cells not in region: {sorted(missing)}")
        return Region(self.cells - cells)

    def plus(self, cells: Iterable[TriCell]) -> "Region":
        cells = set(cells)
        if cells & self.cells:
            raise RegionError("added cells overlap the region")
        return Region(self.cells | cells)

    def translated(self, du: int, dv: int) -> "Region":
        return Region(TriCell(c.u + du, c.v + dv, c.orient) for c in self.cells)

    def normalized(self) -> "Region":
        if not self.cells:
            return self
        du = min(c.u for c in self.cells)
        dv = min(c.v for c in self.cells)
        return self.translated(-du, -dv)


@dataclass(frozen=True)
class MarkedRegion:
    """A region with named distinguished cells (dents ``a``, protrusions ``b``...)."""

    region: Region
    marks: dict = field(default_factory=dict)

    def __getitem__(self, key):
        return self.marks[key]


# ---------------------------------------------------------------------------
# hexagon frames


class HexFrame:
    """Lattice hexagon with sides N, NE, SE, S, SW, NW (clockwise from the top).

    The corners are T0 = (0, h) (north-west), T1 = (N, h), T2 = (N+NE, SE),
    T3 = (N+NE, 0), T4 = (SW, 0), T5 = (0, SW), with h = NE + SE.
    """

    SIDES = ("N", "NE", "SE", "S", "SW", "NW")

    def __init__(self, N: int, NE: int, SE: int, S: int, SW: int, NW: int):
        sides = (N, NE, SE, S, SW, NW)
        if any(s < 0 for s in sides):
            raise RegionError(f"negative side length in {sides}")
        if N + NE != S + SW or NE + SE != SW + NW:
            raise RegionError(f"side lengths {sides} do not close up")
        self.sides = dict(zip(self.SIDES, sides))
        self.h = NE + SE
        self.xmax = N + NE
        self.smin = SW
        self.smax = N + self.h

    def __getitem__(self, side: str) -> int:
        return self.sides[side]

    def contains(self, c: TriCell) -> bool:
        # centroid test, scaled by 3
        if c.orient == UP:
            cx, cy = 3 * c.u + 1, 3 * c.v + 1
        else:
            cx, cy = 3 * c.u + 2, 3 * c.v + 2
        return (
            0 <= cy <= 3 * self.h
            and 0 <= cx <= 3 * self.xmax
            and 3 * self.smin <= cx + cy <= 3 * self.smax
        )

    def cells(self) -> set[TriCell]:
        out = set()
        for v in range(self.h):
            for u in range(-self.h - 1, self.xmax + 1):
                for o in (UP, DOWN):
                    c = TriCell(u, v, o)
                    if self.contains(c):
                        out.add(c)
        return out

    def region(self) -> Region:
        return Region(self.cells())

    def side_ups(self, side: str) -> list[TriCell]:
        """Up cells with an edge on the S, NE or NW side, counterclockwise from its start corner."""
        s = self.sides
        if side == "S":
            return [TriCell(u, 0, UP) for u in range(s["SW"], s["SW"] + s["S"])]
        if side == "NE":
            L = self.smax
            return [TriCell(L - 1 - v, v, UP) for v in range(s["SE"], self.h)]
        if side == "NW":
            return [TriCell(0, v, UP) for v in range(self.h - 1, s["SW"] - 1, -1)]
        raise RegionError(f"up cells only line the S, NE and NW sides, not {side!r}")

    def outside_downs(self, side: str) -> list[TriCell]:
        """Down cells just outside the S, NE or NW side, matching :meth:`side_ups`."""
        if side == "S":
            return [TriCell(c.u, -1, DOWN) for c in self.side_ups("S")]
        if side == "NE":
            return [TriCell(c.u, c.v, DOWN) for c in self.side_ups("NE")]
        if side == "NW":
            return [TriCell(-1, c.v, DOWN) for c in self.side_ups("NW")]
        raise RegionError(f"no outside strings on side {side!r}")

    def top_downs(self) -> list[TriCell]:
        """Down cells with an edge on the N side, west to east."""
        start = max(0, self.smin - self.h)
        return [TriCell(u, self.h - 1, DOWN) for u in range(start, start + self.sides["N"])]


def hexagon_sides(N: int, NE: int, SE: int, S: int, SW: int, NW: int) -> Region:
    return HexFrame(N, NE, SE, S, SW, NW).region()


def hexagon(a: int, b: int, c: int) -> Region:
    """Hexagon with sides a, b, c, a, b, c clockwise from the top."""
    if min(a, b, c) < 0:
        raise RegionError("hexagon sides must be nonnegative")
    return hexagon_sides(a, b, c, a, b, c)


# ---------------------------------------------------------------------------
# dented hexagons


def _check_pos(name: str, value: int, hi: int) -> None:
    if not 0 <= value <= hi:
        raise RegionError(f"{name}={value} outside [0, {hi}]")


def _eisenkolbl_frame(a: int, b: int, c: int) -> HexFrame:
    if min(a, b, c) < 0:
        raise RegionError("a, b, c must be nonnegative")
    return HexFrame(a, b + 3, c, a + 3, b, c + 3)


def eisenkolbl_marked(a: int, b: int, c: int, r: int, s: int, t: int) -> MarkedRegion:
    """H*_{a,b,c} with the six cells b1, a1, b2, a2, b3, a3 of the dent problem.

    The dents sit at positions r, s, t on the sides of lengths a+3, b+3, c+3;
    each b_i sticks out at position 0 of the same side.
    """
    fr = _eisenkolbl_frame(a, b, c)
    _check_pos("r", r, a + 2)
    _check_pos("s", s, b + 2)
    _check_pos("t", t, c + 2)
    dents = [fr.side_ups("S")[r], fr.side_ups("NE")[s], fr.side_ups("NW")[t]]
    outs = [fr.outside_downs(side)[0] for side in ("S", "NE", "NW")]
    region = fr.region().plus(outs)
    return MarkedRegion(region, {"a": tuple(dents), "b": tuple(outs)})


def eisenkolbl_region(a: int, b: int, c: int, r: int, s: int, t: int) -> Region:
    """Hexagon of sides a, b+3, c, a+3, b, c+3 with one unit up-dent on each long side."""
    fr = _eisenkolbl_frame(a, b, c)
    _check_pos("r", r, a + 2)
    _check_pos("s", s, b + 2)
    _check_pos("t", t, c + 2)
    dents = [fr.side_ups("S")[r], fr.side_ups("NE")[s], fr.side_ups("NW")[t]]
    return fr.region().minus(dents)


def hstar_region(a: int, b: int, c: int) -> MarkedRegion:
    """Hexagon of sides a, b+3, c, a+3, b, c+3 plus three protruding down cells b1, b2, b3."""
    fr = _eisenkolbl_frame(a, b, c)
    outs = [fr.outside_downs(side)[0] for side in ("S", "NE", "NW")]
    return MarkedRegion(fr.region().plus(outs), {"b": tuple(outs)})


def t_region(m: int, n: int, xs: Sequence[int]) -> Region:
    """Trapezoid with sides m, n, m+n, n (clockwise from the bottom) minus top down cells xs (1-based)."""
    xs = list(xs)
    if m < 0 or n < 0:
        raise RegionError("m, n must be nonnegative")
    if len(xs) != n:
        raise RegionError(f"need exactly n={n} positions, got {len(xs)}")
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise RegionError("positions must be strictly increasing")
    if xs and (xs[0] < 1 or xs[-1] > m + n):
        raise RegionError(f"positions must lie in [1, {m + n}]")
    fr = HexFrame(m + n, 0, n, m, n, 0)
    top = fr.top_downs()
    return fr.region().minus(top[x - 1] for x in xs)


_DENT_SIDES = ("S", "NE", "NW")


def _hk_frame(x: int, y: int, z: int, k: int) -> HexFrame:
    if min(x, y, z, k) < 0:
        raise RegionError("x, y, z, k must be nonnegative")
    return HexFrame(x, y + k, z, x + k, y, z + k)


def _dent_cells(fr: HexFrame, dents) -> tuple[list[TriCell], dict[str, int]]:
    cells = []
    per_side = {s: 0 for s in _DENT_SIDES}
    for item in dents:
        side, pos = item
        if side not in _DENT_SIDES:
            raise RegionError(f"dent side must be one of {_DENT_SIDES}, got {side!r}")
        ups = fr.side_ups(side)
        if not 0 <= pos < len(ups):
            raise RegionError(f"dent position {pos} outside side {side} of length {len(ups)}")
        cells.append(ups[pos])
        per_side[side] += 1
    if len(set(cells)) != len(cells):
        raise RegionError("overlapping dents")
    return cells, per_side


def h_k_region(x: int, y: int, z: int, k: int, dents) -> Region:
    """Hexagon of sides x, y+k, z, x+k, y, z+k minus k unit up-dents ``(side, pos)``."""
    dents = list(dents)
    if len(dents) != k:
        raise RegionError(f"need exactly k={k} dents, got {len(dents)}")
    fr = _hk_frame(x, y, z, k)
    cells, _ = _dent_cells(fr, dents)
    return fr.region().minus(cells)


def h_star_strings(x: int, y: int, z: int, k: int, dents) -> MarkedRegion:
    """The undented hexagon plus, on each dented side, a string of protruding down cells.

    The string on a side has one cell per dent on that side and starts at the
    side's first position.  Marks: ``a`` the dent cells (in the given order),
    ``b`` the string cells (S, then NE, then NW strings, each counterclockwise).
    """
    dents = list(dents)
    if len(dents) != k:
        raise RegionError(f"need exactly k={k} dents, got {len(dents)}")
    fr = _hk_frame(x, y, z, k)
    cells, per_side = _dent_cells(fr, dents)
    outs = []
    for side in _DENT_SIDES:
        outs.extend(fr.outside_downs(side)[: per_side[side]])
    region = fr.region().plus(outs)
    return MarkedRegion(region, {"a": tuple(cells), "b": tuple(outs)})


def _notch_cells(fr: HexFrame, k: int, lowest_v: int) -> list[TriCell]:
    """Cells of the side-k up triangle whose right edge lies on the NE side, from ``lowest_v``."""
    L = fr.smax
    qx = L - lowest_v - k
    out = []
    for v in range(lowest_v, lowest_v + k):
        for u in range(qx, L):
            if u + v + 1 <= L:
                out.append(TriCell(u, v, UP))
            if u + v + 2 <= L:
                out.append(TriCell(u, v, DOWN))
    return out


def _hkl_frame(x: int, y: int, z: int, k: int, l: int) -> HexFrame:
    if min(x, y, z, k) < 0:
        raise RegionError("x, y, z, k must be nonnegative")
    _check_pos("l", l, z + k)
    return HexFrame(x, y + k + 1, z, x + k + 1, y, z + k + 1)


def _nw_dent(fr: HexFrame, l: int) -> TriCell:
    return TriCell(0, fr["SW"] + l, UP)


def h_kl_region(x: int, y: int, z: int, k: int, l: int) -> Region:
    """Hexagon of sides x, y+k+1, z, x+k+1, y, z+k+1 with two notches.

    A unit up-dent on the north-west side l units above the west corner, and a
    side-k up triangle on the north-east side one unit above the east corner.
    """
    fr = _hkl_frame(x, y, z, k, l)
    notch = _notch_cells(fr, k, fr["SE"] + 1)
    return fr.region().minus([_nw_dent(fr, l), *notch])


def h_prime_kl_region(x: int, y: int, z: int, k: int, l: int) -> Region:
    """As :func:`h_kl_region`, but the side-k notch ends one unit below the north-east corner."""
    fr = _hkl_frame(x, y, z, k, l)
    notch = _notch_cells(fr, k, fr.h - 1 - k)
    return fr.region().minus([_nw_dent(fr, l), *notch])


def f_region(x: int, y: int, z: int, l: int) -> Region:
    """Hexagon of sides x, y+1, z, x+1, y, z+1 minus the up cell l units above the west corner."""
    if min(x, y, z) < 0:
        raise RegionError("x, y, z must be nonnegative")
    _check_pos("l", l, z)
    fr = HexFrame(x, y + 1, z, x + 1, y, z + 1)
    return fr.region().minus([_nw_dent(fr, l)])


def augmented_region(x: int, y: int, z: int, k: int, l: int) -> MarkedRegion:
    """H_{x,y,z}(k,l) with a band of 2x-1 cells on top, and the four condensation cells.

    Marks ``a``, ``b``, ``c`` are up cells and ``d`` a down cell, in cyclic order
    on the outer face: ``a`` at the west corner, ``b`` the west end of the band,
    ``c`` just above the east corner and ``d`` the down cell in the south-east
    corner.
    """
    if x < 1:
        raise RegionError("the augmented region needs x >= 1")
    fr = _hkl_frame(x, y, z, k, l)
    base = h_kl_region(x, y, z, k, l)
    h = fr.h
    band = [TriCell(u, h, UP) for u in range(x)] + [TriCell(u, h, DOWN) for u in range(x - 1)]
    region = base.plus(band)
    marks = _augmented_marks(fr, x, y, z, k, l)
    return MarkedRegion(region, marks)


def _augmented_marks(fr: HexFrame, x, y, z, k, l) -> dict:
    # Chosen so that the six regions of the unbalanced Kuo identity reduce to
    # the terms of the two-notch recurrence; checked in tests/test_lattice.py.
    east = fr.xmax - 1
    return {
        "a": TriCell(0, fr["SW"], UP),
        "b": TriCell(0, fr.h, UP),
        "c": TriCell(east, fr["SE"], UP),
        "d": TriCell(east, 0, DOWN),
    }


# ---------------------------------------------------------------------------
# dual graphs and counting


def dual_graph(region: Region) -> WeightedPlanarGraph:
    """Unit-weight dual graph; vertex ids are the cells, in row-sweep order.

    The rotation system follows the geometric directions of the shared edges,
    counterclockwise.
    """
    cells = sorted(region.cells, key=TriCell.sweep_key)
    edges = []
    eid: dict[frozenset, int] = {}
    for c in cells:
        if c.orient != UP:
            continue
        for nb in c.neighbors():
            if nb in region.cells:
                eid[frozenset((c, nb))] = len(edges)
                edges.append((c, nb, 1))
    rotation = {
        c: [eid[frozenset((c, nb))] for nb in c.neighbors() if nb in region.cells]
        for c in cells
    }
    return build_graph(cells, edges, rotation)


def count_tilings(region: Region, backend: str | None = None, max_states: int | None = None) -> int:
    """Number of lozenge tilings (perfect matchings of the dual graph)."""
    from .matching import count_matchings_fast

    if not region.balanced:
        return 0
    if region.has_isolated_cell():
        return 0
    return count_matchings_fast(dual_graph(region), backend=backend, max_states=max_states)


def remove_forced(region: Region) -> Region:
    """Strip lozenges present in every tiling, to a fixpoint.

    A cell with a single neighbour in the region must pair with it.  If a cell
    with no neighbour is met the reduction stops there; the returned region
    then has an isolated cell and no tilings.
    """
    cells = set(region.cells)

    def degree(c):
        return sum(1 for nb in c.neighbors() if nb in cells)

    queue = deque(sorted((c for c in cells if degree(c) <= 1), key=TriCell.sweep_key))
    while queue:
        c = queue.popleft()
        if c not in cells:
            continue
        nbs = [nb for nb in c.neighbors() if nb in cells]
        if not nbs:
            break
        if len(nbs) > 1:
            continue
        partner = nbs[0]
        cells.discard(c)
        cells.discard(partner)
        for nb in partner.neighbors():
            if nb in cells and degree(nb) <= 1:
                queue.append(nb)
    return Region(cells)


def _centroid_xy(c: TriCell) -> tuple[int, int]:
    # planar centroid scaled so both coordinates are integers (y is stretched
    # by a constant factor, which does not change the sign of any area)
    cx, cy = (3 * c.u + 1, 3 * c.v + 1) if c.orient == UP else (3 * c.u + 2, 3 * c.v + 2)
    return (2 * cx + cy, cy)


def outer_walk(region: Region) -> list[TriCell]:
    """Cells met along the unbounded face of the dual graph, counterclockwise.

    The dual graph must be connected.  Cells can repeat (cut vertices,
    pending cells); see :func:`boundary_order`.
    """
    from .graph import face_darts

    g = dual_graph(region)
    if g.n == 0:
        return []
    if g.n == 1:
        return [g.vertices[0]]
    if not g.is_connected():
        raise RegionError("outer walk needs a region with connected dual graph")
    best, best_area = None, None
    for walk in face_darts(g):
        pts = [_centroid_xy(v) for v, _ in walk]
        area = sum(
            pts[i][0] * pts[(i + 1) % len(pts)][1] - pts[(i + 1) % len(pts)][0] * pts[i][1]
            for i in range(len(pts))
        )
        if best_area is None or area < best_area:
            best, best_area = walk, area
    # the unbounded face is traversed clockwise; reverse it
    return [v for v, _ in reversed(best)]


def boundary_order(region: Region, cells: Iterable[TriCell], start: TriCell | None = None) -> list[TriCell]:
    """``cells`` sorted by first visit along the counterclockwise outer walk.

    With ``start`` the walk is entered at the first visit of that cell.
    """
    cells = list(cells)
    wanted = set(cells)
    walk = outer_walk(region)
    if start is not None:
        i = walk.index(start)
        walk = walk[i:] + walk[:i]
    out, seen = [], set()
    for c in walk:
        if c in wanted and c not in seen:
            seen.add(c)
            out.append(c)
    if seen != wanted:
        raise RegionError(f"cells not on the outer boundary: {sorted(wanted - seen)}")
    return out


# ---------------------------------------------------------------------------
# symmetry and shape recognition


def _rot60(p):
    x, y = p
    return (-y, x + y)


def _reflect(p):
    x, y = p
    return (-x - y, y)


def _transforms():
    out = []
    for refl in (False, True):
        for r in range(6):
            def f(p, r=r, refl=refl):
                if refl:
                    p = _reflect(p)
                for _ in range(r):
                    p = _rot60(p)
                return p

            out.append(f)
    return out


_TRANSFORMS = _transforms()


def transform_region(region: Region, index: int) -> Region:
    """Apply the ``index``-th of the 12 lattice symmetries (rotations, then reflected rotations)."""
    f = _TRANSFORMS[index]
    return Region(cell_from_corners(f(p) for p in c.corners()) for c in region.cells)


def canonical_key(region: Region) -> tuple:
    """Key equal for regions related by a lattice translation, rotation or reflection."""
    best = None
    for i in range(12):
        cells = transform_region(region, i).normalized().cells
        key = tuple(sorted(cells))
        if best is None or key < best:
            best = key
    return best or ()


def _bounds(region: Region):
    pts = {p for c in region.cells for p in c.corners()}
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    ss = [p[0] + p[1] for p in pts]
    return min(xs), max(xs), min(ys), max(ys), min(ss), max(ss)


def _bounding_frame(region: Region):
    """Smallest lattice hexagon containing the region, as (frame, shifted region)."""
    x0, x1, y0, y1, s0, s1 = _bounds(region)
    shifted = region.translated(-x0, -y0)
    X, h = x1 - x0, y1 - y0
    smin, smax = s0 - x0 - y0, s1 - x0 - y0
    N = min(X, smax - h) - max(0, smin - h)
    S = min(X, smax) - max(0, smin)
    NE = min(h, smax) - max(0, smax - X)
    SE = min(h, smax - X) - max(0, smin - X)
    SW = min(h, smin) - max(0, smin - X)
    NW = min(h, smax) - max(0, smin)
    try:
        fr = HexFrame(N, NE, SE, S, SW, NW)
    except RegionError:
        return None, shifted
    if fr.smin != smin or fr.smax != smax or fr.xmax != X or fr.h != h:
        return None, shifted
    return fr, shifted


def _as_hexagon(region: Region):
    fr, shifted = _bounding_frame(region)
    if fr is None or shifted.cells != fr.cells():
        return None
    s = fr.sides
    if s["N"] == s["S"] and s["NE"] == s["SW"] and s["SE"] == s["NW"]:
        return ("hexagon", (s["N"], s["NE"], s["SE"]))
    return None


def _as_top_dented(region: Region):
    """T-region parameters if the region is a hexagon minus down cells along its N side."""
    fr, shifted = _bounding_frame(region)
    if fr is None:
        return None
    full = fr.cells()
    if not shifted.cells <= full:
        return None
    missing = full - shifted.cells
    top = fr.top_downs()
    index = {c: i for i, c in enumerate(top)}
    if any(c not in index for c in missing):
        return None
    s = fr.sides
    m, n = s["S"], fr.h
    if m + n != s["NW"] + s["N"] + s["NE"]:
        return None
    xs = list(range(1, s["NW"] + 1))
    xs += sorted(s["NW"] + index[c] + 1 for c in missing)
    xs += list(range(m + n - s["NE"] + 1, m + n + 1))
    if len(xs) != n:
        return None
    return ("t", (m, n, tuple(xs)))


def _as_notched(region: Region, prime: bool):
    fr, shifted = _bounding_frame(region)
    if fr is None:
        return None
    s = fr.sides
    x, y, z = s["N"], s["SW"], s["SE"]
    k = s["NE"] - y - 1
    if k < 0 or s["S"] != x + k + 1 or s["NW"] != z + k + 1:
        return None
    missing = fr.cells() - shifted.cells
    nw = [c for c in missing if c.u == 0 and c.orient == UP]
    if len(nw) != 1:
        return None
    l = nw[0].v - y
    if not 0 <= l <= z + k:
        return None
    build = h_prime_kl_region if prime else h_kl_region
    cand = build(x, y, z, k, l)
    if cand.cells != shifted.cells:
        return None
    return ("hkl_prime" if prime else "hkl", (x, y, z, k, l))


def identify_shape(region: Region):
    """Recognize a region, up to lattice symmetry, as a member of a counted family.

    Returns ``(family, params)`` with family one of ``hexagon``, ``t``,
    ``hkl``, ``hkl_prime``, or None.  The region is tried as given and after
    :func:`remove_forced`.
    """
    if not region.cells:
        return ("hexagon", (0, 0, 0))
    tried = [region]
    reduced = remove_forced(region)
    if reduced.cells != region.cells:
        if not reduced.cells and not reduced.has_isolated_cell():
            return ("hexagon", (0, 0, 0))
        tried.append(reduced)
    for cand in tried:
        if cand.has_isolated_cell() or not cand.balanced:
            continue
        found = _as_hexagon(cand)
        if found:
            return found
        for i in range(12):
            img = transform_region(cand, i)
            for probe in (_as_top_dented,):
                found = probe(img)
                if found:
                    return found
        for i in range(12):
            img = transform_region(cand, i)
            for prime in (False, True):
                found = _as_notched(img, prime)
                if found:
                    return found
    return None


# ---------------------------------------------------------------------------
# JSON region specs


_FAMILIES = {
    "hexagon": ("a", "b", "c"),
    "eisenkolbl": ("a", "b", "c", "r", "s", "t"),
    "hstar": ("a", "b", "c"),
    "t": ("m", "n", "xs"),
    "hk": ("x", "y", "z", "k", "dents"),
    "hstar_strings": ("x", "y", "z", "k", "dents"),
    "hkl": ("x", "y", "z", "k", "l"),
    "hkl_prime": ("x", "y", "z", "k", "l"),
    "f": ("x", "y", "z", "l"),
    "augmented": ("x", "y", "z", "k", "l"),
}


def region_from_spec(spec: dict) -> MarkedRegion:
    """Build a region from ``{"family": ..., "params": {...}}``."""
    if not isinstance(spec, dict) or "family" not in spec:
        raise RegionError("region spec needs a 'family' key")
    family = spec["family"]
    if family not in _FAMILIES:
        raise RegionError(f"unknown family {family!r}; expected one of {sorted(_FAMILIES)}")
    params = dict(spec.get("params", {}))
    if family in ("hk", "hstar_strings"):
        params.setdefault("k", len(params.get("dents", [])))
    names = _FAMILIES[family]
    missing = [p for p in names if p not in params]
    extra = [p for p in params if p not in names]
    if missing or extra:
        raise RegionError(f"family {family!r} takes {names}; missing {missing}, unexpected {extra}")
    args = []
    for p in names:
        val = params[p]
        if p == "xs":
            val = [int(v) for v in val]
        elif p == "dents":
            val = [(str(side), int(pos)) for side, pos in val]
        else:
            if isinstance(val, bool) or not isinstance(val, int):
                raise RegionError(f"parameter {p!r} must be an integer")
        args.append(val)
    if family == "hexagon":
        return MarkedRegion(hexagon(*args))
    if family == "eisenkolbl":
        mr = eisenkolbl_marked(*args)
        return MarkedRegion(eisenkolbl_region(*args), {"a": mr["a"]})
    if family == "hstar":
        return hstar_region(*args)
    if family == "t":
        return MarkedRegion(t_region(*args))
    if family == "hk":
        return MarkedRegion(h_k_region(*args))
    if family == "hstar_strings":
        return h_star_strings(*args)
    if family == "hkl":
        return MarkedRegion(h_kl_region(*args))
    if family == "hkl_prime":
        return MarkedRegion(h_prime_kl_region(*args))
    if family == "f":
        return MarkedRegion(f_region(*args))
    return augmented_region(*args)


# ---------------------------------------------------------------------------
# rendering


def _marked_cells(marked) -> set[TriCell]:
    out = set()
    for item in marked or ():
        if isinstance(item, TriCell):
            out.add(item)
        elif isinstance(item, (list, tuple)) and item and isinstance(item[0], TriCell):
            out.update(item)
        elif isinstance(item, (list, tuple)) and len(item) == 3:
            out.add(TriCell(*item))
    return out


def render(region: Region, format: str = "ascii", marked=()) -> str:
    """Deterministic drawing.  ASCII uses one glyph per cell: ``^`` up, ``v`` down, ``*`` marked."""
    marks = _marked_cells(marked)
    cells = set(region.cells) | marks
    if format == "ascii":
        return _render_ascii(cells, marks)
    if format == "svg":
        return _render_svg(cells, region.cells, marks)
    raise ValueError(f"unknown render format {format!r}")


def _render_ascii(cells, marks) -> str:
    if not cells:
        return ""
    col = {c: 2 * c.u + c.v + 1 + c.orient for c in cells}
    lo = min(col.values())
    rows = sorted({c.v for c in cells}, reverse=True)
    lines = []
    for v in rows:
        row = [c for c in cells if c.v == v]
        width = max(col[c] for c in row) - lo + 1
        buf = [" "] * width
        for c in row:
            if c in marks:
                glyph = "*"
            else:
                glyph = "^" if c.orient == UP else "v"
            buf[col[c] - lo] = glyph
        lines.append("".join(buf).rstrip())
    return "\n".join(lines) + "\n"


_SQ3_2 = 0.8660254037844386


def _render_svg(cells, inside, marks) -> str:
    unit = 20.0
    pts = [p for c in cells for p in c.corners()]
    if not pts:
        return '<svg xmlns="http://www.w3.org/2000/svg" width="1" height="1"/>\n'
    X = [x + y / 2 for x, y in pts]
    Y = [y * _SQ3_2 for _, y in pts]
    x0, x1, y0, y1 = min(X), max(X), min(Y), max(Y)
    pad = 1.0
    W = (x1 - x0 + 2 * pad) * unit
    H = (y1 - y0 + 2 * pad) * unit

    def tr(p):
        x, y = p
        return ((x + y / 2 - x0 + pad) * unit, (y1 - y * _SQ3_2 + pad) * unit)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W:.1f}" height="{H:.1f}" '
        f'viewBox="0 0 {W:.1f} {H:.1f}">'
    ]
    for c in sorted(cells, key=TriCell.sweep_key):
        if c in marks:
            fill = "#d62728"
        elif c not in inside:
            fill = "#ffffff"
        else:
            fill = "#c6dbef" if c.orient == UP else "#fdd0a2"
        poly = " ".join(f"{a:.2f},{b:.2f}" for a, b in map(tr, c.corners()))
        out.append(
            f'  <polygon points="{poly}" fill="{fill}" stroke="#333333" stroke-width="0.8">'
            f"<title>{c.u},{c.v},{'up' if c.orient == UP else 'down'}</title></polygon>"
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
