"""Exact region algebra over finite unions of axis-aligned boxes.

Intervals carry open/closed flags and may be unbounded; coordinates are
``Fraction`` or ``math.inf``/``-math.inf``. A :class:`Region` keeps its boxes
pairwise disjoint, which makes union, intersection and difference simple
box-by-box splits. Equality and printing go through the canonical form: the
coarsest per-axis breakpoint grid that still represents the point set, plus
the set of grid cells the region covers.

The second half of the module builds the regions attached to a game
(feasible set, core, Pareto set, individually rational set) and the exact
L-infinity Hausdorff distance between grand-coalition hulls.
"""
from __future__ import annotations

from bisect import bisect_left
import itertools
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Optional, Sequence

from .game import NTUGame, as_mask, b_vector, members, popcount

INF = math.inf


class Interval(NamedTuple):
    lo: object
    lo_closed: bool
    hi: object
    hi_closed: bool

    def __contains__(self, v) -> bool:
        # float endpoints are always infinite; skip the slow mixed comparison
        lo, hi = self.lo, self.hi
        if lo.__class__ is not float and (v < lo or (v == lo and not self.lo_closed)):
            return False
        if hi.__class__ is not float and (v > hi or (v == hi and not self.hi_closed)):
            return False
        return True

    def __str__(self) -> str:
        if self.lo == self.hi:
            return "{" + _fmt(self.lo) + "}"
        return f"{'[' if self.lo_closed else '('}{_fmt(self.lo)},{_fmt(self.hi)}{']' if self.hi_closed else ')'}"


def _fmt(v) -> str:
    if v == INF:
        return "inf"
    if v == -INF:
        return "-inf"
    return str(v)


def _nonempty(lo, lc, hi, hc) -> bool:
    return lo < hi or (lo == hi and lc and hc)


def interval(lo, hi, lo_closed: bool = True, hi_closed: bool = True) -> Interval:
    """Validated interval constructor. Infinite endpoints are forced open."""
    lo = -INF if lo == -INF else Fraction(lo)
    hi = INF if hi == INF else Fraction(hi)
    if lo == INF or hi == -INF:
        raise ValueError("lower endpoint cannot be +inf and upper cannot be -inf")
    lo_closed = bool(lo_closed) and lo != -INF
    hi_closed = bool(hi_closed) and hi != INF
    if not _nonempty(lo, lo_closed, hi, hi_closed):
        raise ValueError(f"empty interval {lo},{hi}")
    return Interval(lo, lo_closed, hi, hi_closed)


REAL = Interval(-INF, False, INF, False)


def point_interval(v) -> Interval:
    return interval(v, v)


def down_to(v, closed: bool = True) -> Interval:
    return Interval(-INF, False, Fraction(v), closed)


def up_from(v, closed: bool = True) -> Interval:
    return Interval(Fraction(v), closed, INF, False)


def _iv_intersect(a: Interval, b: Interval) -> Optional[Interval]:
    if a.lo > b.lo:
        lo, lc = a.lo, a.lo_closed
    elif a.lo < b.lo:
        lo, lc = b.lo, b.lo_closed
    else:
        lo, lc = a.lo, a.lo_closed and b.lo_closed
    if a.hi < b.hi:
        hi, hc = a.hi, a.hi_closed
    elif a.hi > b.hi:
        hi, hc = b.hi, b.hi_closed
    else:
        hi, hc = a.hi, a.hi_closed and b.hi_closed
    if _nonempty(lo, lc, hi, hc):
        return Interval(lo, lc, hi, hc)
    return None


def _iv_outside(a: Interval, b: Interval) -> list:
    """Parts of ``a`` strictly below and strictly above ``b``."""
    out = []
    if b.lo != -INF:
        # a clipped to end just before b starts
        if a.hi < b.lo:
            hi, hc = a.hi, a.hi_closed
        elif a.hi > b.lo:
            hi, hc = b.lo, not b.lo_closed
        else:
            hi, hc = b.lo, a.hi_closed and not b.lo_closed
        if _nonempty(a.lo, a.lo_closed, hi, hc):
            out.append(Interval(a.lo, a.lo_closed, hi, hc))
    if b.hi != INF:
        if a.lo > b.hi:
            lo, lc = a.lo, a.lo_closed
        elif a.lo < b.hi:
            lo, lc = b.hi, not b.hi_closed
        else:
            lo, lc = b.hi, a.lo_closed and not b.hi_closed
        if _nonempty(lo, lc, a.hi, a.hi_closed):
            out.append(Interval(lo, lc, a.hi, a.hi_closed))
    return out


def box_intersect(a: tuple, b: tuple) -> Optional[tuple]:
    out = []
    for x, y in zip(a, b):
        iv = _iv_intersect(x, y)
        if iv is None:
            return None
        out.append(iv)
    return tuple(out)


def box_minus(a: tuple, b: tuple) -> list:
    """Disjoint boxes covering ``a`` minus ``b``."""
    inter = box_intersect(a, b)
    if inter is None:
        return [a]
    pieces = []
    cur = list(a)
    for k in range(len(a)):
        for part in _iv_outside(cur[k], b[k]):
            pieces.append(tuple(cur[:k]) + (part,) + tuple(cur[k + 1:]))
        cur[k] = inter[k]
    return pieces


def box_contains(box: tuple, x: Sequence) -> bool:
    return all(v in iv for iv, v in zip(box, x))


class Extremum(NamedTuple):
    value: object
    attained: bool


# --- canonical grid -------------------------------------------------------
#
# Along an axis with sorted breakpoints v_0 < ... < v_{k-1} the atoms are
# indexed 0..2k: atom 2j is the open gap before v_j (after v_{j-1}), atom
# 2j+1 is the point {v_j}, atom 2k is the open tail (v_{k-1}, inf).


def _atom_range(iv: Interval, bps: Sequence, index: dict) -> tuple:
    if iv.lo == -INF:
        first = 0
    else:
        j = index[iv.lo]
        first = 2 * j + 1 if iv.lo_closed else 2 * j + 2
    if iv.hi == INF:
        last = 2 * len(bps)
    else:
        j = index[iv.hi]
        last = 2 * j + 1 if iv.hi_closed else 2 * j
    return first, last


def _atom_interval(bps: Sequence, first: int, last: int) -> Interval:
    if first % 2:
        lo, lc = bps[first // 2], True
    else:
        j = first // 2
        lo, lc = (bps[j - 1], False) if j > 0 else (-INF, False)
    if last % 2:
        hi, hc = bps[last // 2], True
    else:
        j = last // 2
        hi, hc = (bps[j], False) if j < len(bps) else (INF, False)
    return Interval(lo, lc, hi, hc)


def _atom_sample(bps: Sequence, atom: int):
    if atom % 2:
        return bps[atom // 2]
    j = atom // 2
    lo = bps[j - 1] if j > 0 else None
    hi = bps[j] if j < len(bps) else None
    if lo is not None and hi is not None:
        return (lo + hi) / 2
    if hi is not None:
        return hi - 1
    if lo is not None:
        return lo + 1
    return Fraction(0)


def _breakpoints(boxes: Iterable[tuple], dim: int, extra: Optional[Sequence] = None) -> tuple:
    vals = [set() for _ in range(dim)]
    for box in boxes:
        for k, iv in enumerate(box):
            if iv.lo != -INF:
                vals[k].add(iv.lo)
            if iv.hi != INF:
                vals[k].add(iv.hi)
    if extra is not None:
        for k, vs in enumerate(extra):
            vals[k].update(Fraction(v) for v in vs)
    return tuple(tuple(sorted(v)) for v in vals)


def _cells(boxes: Iterable[tuple], grid: tuple) -> set:
    index = [{v: j for j, v in enumerate(bps)} for bps in grid]
    cells = set()
    for box in boxes:
        ranges = []
        for k, iv in enumerate(box):
            first, last = _atom_range(iv, grid[k], index[k])
            ranges.append(range(first, last + 1))
        cells.update(itertools.product(*ranges))
    return cells


def _cell_of(grid: tuple, x: Sequence) -> tuple:
    cell = []
    for bps, v in zip(grid, x):
        j = bisect_left(bps, v)
        cell.append(2 * j + 1 if j < len(bps) and bps[j] == v else 2 * j)
    return tuple(cell)


def _coarsen(grid: tuple, cells: set) -> tuple:
    grid = list(grid)
    for axis in range(len(grid)):
        bps = grid[axis]
        if not bps:
            continue
        slices = defaultdict(set)
        for c in cells:
            slices[c[axis]].add(c[:axis] + c[axis + 1:])
        keep = [not (slices[2 * j] == slices[2 * j + 1] == slices[2 * j + 2]) for j in range(len(bps))]
        if all(keep):
            continue
        remap = {0: 0}
        pos = 0
        for j, kept in enumerate(keep):
            if kept:
                remap[2 * j + 1] = 2 * pos + 1
                remap[2 * j + 2] = 2 * pos + 2
                pos += 1
            else:
                remap[2 * j + 1] = remap[2 * j + 2] = remap[2 * j]
        cells = {c[:axis] + (remap[c[axis]],) + c[axis + 1:] for c in cells}
        grid[axis] = tuple(v for v, kept in zip(bps, keep) if kept)
    return tuple(grid), cells


def _merge_cells(grid: tuple, cells: set) -> list:
    """Deterministic greedy cover of a cell set by disjoint boxes."""
    remaining = set(cells)
    dim = len(grid)
    out = []
    for c in sorted(cells):
        if c not in remaining:
            continue
        lo, hi = list(c), list(c)
        for axis in range(dim):
            while hi[axis] < 2 * len(grid[axis]):
                nxt = hi[axis] + 1
                ranges = [range(lo[k], hi[k] + 1) if k != axis else (nxt,) for k in range(dim)]
                if all(cc in remaining for cc in itertools.product(*ranges)):
                    hi[axis] = nxt
                else:
                    break
        for cc in itertools.product(*[range(lo[k], hi[k] + 1) for k in range(dim)]):
            remaining.discard(cc)
        out.append(tuple(_atom_interval(grid[k], lo[k], hi[k]) for k in range(dim)))
    return out


@dataclass(frozen=True)
class Canonical:
    grid: tuple
    cells: frozenset


@dataclass(frozen=True, eq=False)
class Region:
    """Finite union of pairwise disjoint boxes over ``players``.

    ``==`` and ``hash`` are point-set semantics (via the canonical form).
    """

    players: tuple
    boxes: tuple = ()

    @classmethod
    def empty(cls, players) -> "Region":
        return cls(tuple(players), ())

    @classmethod
    def universe(cls, players) -> "Region":
        players = tuple(players)
        return cls(players, (tuple(REAL for _ in players),))

    @classmethod
    def from_boxes(cls, players, boxes: Iterable[Sequence[Interval]]) -> "Region":
        """Region covering possibly overlapping boxes."""
        players = tuple(players)
        acc = cls.empty(players)
        for box in boxes:
            box = tuple(box)
            if len(box) != len(players):
                raise ValueError(f"box of dimension {len(box)} over players {players}")
            acc = acc | cls(players, (box,))
        return acc

    @property
    def dim(self) -> int:
        return len(self.players)

    def _same(self, other: "Region"):
        if self.players != other.players:
            raise ValueError(f"region player sets differ: {self.players} vs {other.players}")

    def is_empty(self) -> bool:
        return not self.boxes

    def __bool__(self) -> bool:
        return bool(self.boxes)

    def contains(self, x: Sequence) -> bool:
        if len(x) != self.dim:
            raise ValueError(f"point of dimension {len(x)} for region over {self.players}")
        c = self.__dict__.get("canonical")
        if c is not None:
            return _cell_of(c.grid, x) in c.cells
        return any(box_contains(b, x) for b in self.boxes)

    __contains__ = contains

    def __and__(self, other: "Region") -> "Region":
        self._same(other)
        out = []
        for a in self.boxes:
            for b in other.boxes:
                c = box_intersect(a, b)
                if c is not None:
                    out.append(c)
        return Region(self.players, tuple(out))

    def __sub__(self, other: "Region") -> "Region":
        self._same(other)
        pieces = list(self.boxes)
        for b in other.boxes:
            nxt = []
            for p in pieces:
                nxt.extend(box_minus(p, b))
            pieces = nxt
            if not pieces:
                break
        return Region(self.players, tuple(pieces))

    def __or__(self, other: "Region") -> "Region":
        return Region(self.players, self.boxes + (other - self).boxes)

    def complement(self) -> "Region":
        return Region.universe(self.players) - self

    def issubset(self, other: "Region") -> bool:
        return (self - other).is_empty()

    def equals(self, other: "Region") -> bool:
        return self.issubset(other) and other.issubset(self)

    @cached_property
    def canonical(self) -> Canonical:
        grid = _breakpoints(self.boxes, self.dim)
        grid, cells = _coarsen(grid, _cells(self.boxes, grid))
        return Canonical(grid, frozenset(cells))

    def canonicalize(self) -> "Region":
        c = self.canonical
        out = Region(self.players, tuple(_merge_cells(c.grid, set(c.cells))))
        # same point set, and the coarsest grid is unique
        out.__dict__["canonical"] = c
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Region):
            return NotImplemented
        return self.players == other.players and self.canonical == other.canonical

    def __hash__(self) -> int:
        return hash((self.players, self.canonical))

    def is_bounded(self) -> bool:
        return all(iv.lo != -INF and iv.hi != INF for b in self.boxes for iv in b)

    def __str__(self) -> str:
        if not self.boxes:
            return "empty"
        return " U ".join(" x ".join(str(iv) for iv in b) for b in self.canonicalize().boxes)

    def to_json(self) -> dict:
        """Canonical boxes, one interval object per player."""
        return {
            "players": list(self.players),
            "boxes": [
                [{"lo": _fmt(iv.lo), "lo_closed": iv.lo_closed, "hi": _fmt(iv.hi), "hi_closed": iv.hi_closed} for iv in b]
                for b in self.canonicalize().boxes
            ],
        }


def _parse_end(v):
    if v == "inf":
        return INF
    if v == "-inf":
        return -INF
    return Fraction(v)


def region_from_json(data: dict) -> Region:
    boxes = [
        tuple(interval(_parse_end(iv["lo"]), _parse_end(iv["hi"]), iv["lo_closed"], iv["hi_closed"]) for iv in b)
        for b in data["boxes"]
    ]
    return Region.from_boxes(data["players"], boxes)


def region_union(a: Region, b: Region) -> Region:
    return a | b


def region_intersect(a: Region, b: Region) -> Region:
    return a & b


def region_difference(a: Region, b: Region) -> Region:
    return a - b


def region_complement(a: Region) -> Region:
    return a.complement()


def region_is_empty(a: Region) -> bool:
    return a.is_empty()


def region_contains_point(a: Region, x: Sequence) -> bool:
    return a.contains(x)


def region_subset(a: Region, b: Region) -> bool:
    return a.issubset(b)


def region_equals(a: Region, b: Region) -> bool:
    return a.equals(b)


def sample_points(region: Region, grid: Optional[Sequence] = None) -> list:
    """One point per cell of the region's breakpoint grid.

    Point cells give attained extremes, open cells their midpoints. ``grid``
    adds extra per-axis breakpoints so the cells also respect boundaries that
    belong to something else (typically a game's generator coordinates).
    """
    if not region.boxes:
        return []
    bps = _breakpoints(region.boxes, region.dim, grid)
    cells = _cells(region.boxes, bps)
    # cell order equals point order, and ints sort much faster than Fractions
    return [tuple(_atom_sample(bps[k], a) for k, a in enumerate(c)) for c in sorted(cells)]


def _coalition_axes(region: Region, coalition) -> list:
    mask = as_mask(coalition)
    axes = [k for k, p in enumerate(region.players) if mask >> p & 1]
    if len(axes) != popcount(mask):
        raise ValueError(f"coalition {members(mask)} is not within region players {region.players}")
    return axes


def inf_max_coordinate(region: Region, coalition) -> Extremum:
    """Infimum over the region of max_{j in S} x_j, with attainment flag."""
    if region.is_empty():
        raise ValueError("inf_max_coordinate is undefined over the empty region")
    axes = _coalition_axes(region, coalition)
    best = None
    for box in region.boxes:
        v = max(box[k].lo for k in axes)
        attained = v != -INF and all(box[k].lo_closed for k in axes if box[k].lo == v)
        if best is None or v < best.value or (v == best.value and attained):
            best = Extremum(v, attained)
    return best


def sup_min_coordinate(region: Region, coalition) -> Extremum:
    """Supremum over the region of min_{j in S} x_j, with attainment flag."""
    if region.is_empty():
        raise ValueError("sup_min_coordinate is undefined over the empty region")
    axes = _coalition_axes(region, coalition)
    best = None
    for box in region.boxes:
        v = min(box[k].hi for k in axes)
        attained = v != INF and all(box[k].hi_closed for k in axes if box[k].hi == v)
        if best is None or v > best.value or (v == best.value and attained):
            best = Extremum(v, attained)
    return best


def _pick(iv: Interval, below=None, above=None):
    """A value of ``iv`` strictly below ``below`` / strictly above ``above``."""
    lo, lc, hi, hc = iv
    if below is not None and below <= hi:
        hi, hc = below, False
    if above is not None and above >= lo:
        lo, lc = above, False
    if not _nonempty(lo, lc, hi, hc):
        return None
    if lc:
        return lo
    if hc:
        return hi
    if lo == -INF and hi == INF:
        return Fraction(0)
    if lo == -INF:
        return hi - 1
    if hi == INF:
        return lo + 1
    return (lo + hi) / 2


def any_point(region: Region) -> Optional[tuple]:
    if region.is_empty():
        return None
    return tuple(_pick(iv) for iv in region.boxes[0])


def point_with_max_below(region: Region, coalition, t) -> Optional[tuple]:
    """Some x in the region with max_{j in S} x_j < t, or None."""
    axes = set(_coalition_axes(region, coalition))
    for box in region.boxes:
        pt = [_pick(iv, below=t) if k in axes else _pick(iv) for k, iv in enumerate(box)]
        if all(v is not None for v in pt):
            return tuple(pt)
    return None


def point_with_min_above(region: Region, coalition, t) -> Optional[tuple]:
    """Some y in the region with min_{j in S} y_j > t, or None."""
    axes = set(_coalition_axes(region, coalition))
    for box in region.boxes:
        pt = [_pick(iv, above=t) if k in axes else _pick(iv) for k, iv in enumerate(box)]
        if all(v is not None for v in pt):
            return tuple(pt)
    return None


# --- regions of a game ----------------------------------------------------


def game_grid(game: NTUGame) -> tuple:
    """Per-player generator coordinates; every game region is a union of
    cells of this grid."""
    vals = {p: set() for p in game.players}
    for mask, gens in game.table:
        ms = members(mask)
        for g in gens:
            for p, v in zip(ms, g):
                vals[p].add(v)
    return tuple(tuple(sorted(vals[p])) for p in game.players)


def _hull_boxes(gens) -> list:
    return [tuple(down_to(v) for v in g) for g in gens]


def feasible_region(game: NTUGame) -> Region:
    """V(N) as a region: union of closed down-orthants of the generators."""
    return Region.from_boxes(game.players, _hull_boxes(game.generators(game.grand)))


def _cylinders(game: NTUGame, mask: int) -> Region:
    """Points strictly below some generator of S on every coordinate of S."""
    boxes = []
    for g in game.generators(mask):
        it = iter(g)
        boxes.append(tuple(down_to(next(it), closed=False) if mask >> p & 1 else REAL for p in game.players))
    return Region(game.players, tuple(boxes))


def _upset(game: NTUGame, lower: Sequence) -> Region:
    return Region(game.players, (tuple(up_from(v) for v in lower),))


def ir_region(game: NTUGame) -> Region:
    return feasible_region(game) & _upset(game, b_vector(game))


def pareto_region(game: NTUGame) -> Region:
    return feasible_region(game) - _cylinders(game, game.grand)


def core_region(game: NTUGame) -> Region:
    # singleton cylinders are exactly the complement of the IR up-set
    r = ir_region(game)
    for mask, _ in game.table:
        if popcount(mask) < 2:
            continue
        r = r - _cylinders(game, mask)
        if r.is_empty():
            break
    return r


def _directed(ga, gb):
    return max(min(max(max(Fraction(0), x - y) for x, y in zip(g, h)) for h in gb) for g in ga)


def hausdorff_linf(a: NTUGame, b: NTUGame) -> Fraction:
    """Exact L-infinity Hausdorff distance between the grand-coalition hulls.

    Distance from a point to a downward hull is monotone in the point, so each
    directed supremum is attained at a generator.
    """
    if a.players != b.players:
        raise ValueError(f"player sets differ: {a.players} vs {b.players}")
    ga, gb = a.generators(a.grand), b.generators(b.grand)
    return max(_directed(ga, gb), _directed(gb, ga))
