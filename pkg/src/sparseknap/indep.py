"""Depth-first search for the increment sets of a lifted cover inequality.

Adding one item of class ``j`` to a candidate increment set moves a point in
a 2D (coefficient mass, weight) plane by the fixed jump
``(base_coeffs[j] + 1, class_weights[j])``.  A set is independent exactly
when every partial selection keeps its point strictly above the frontier
``y = heavy_sums(x) - surplus``.  The search adds jumps in order of
non-decreasing steepness, so each branch traces a convex path, and it prunes
a branch as soon as one jump segment touches or crosses the frontier at any
integral abscissa.  That pruning is sound (everything reported is
independent) but can drop sets whose long jumps dive under the frontier and
come back up; ``exact`` reports whether such a rejection happened, in which
case maximality claims for this cover must be downgraded to validity only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .covers import CoverClass, LiftingData
from .knapsack import WeightClasses


@dataclass(frozen=True)
class JumpGeometry:
    """Static data of the search: jump vectors, slope order, availability.

    ``order`` lists class indices by non-decreasing slope
    ``weight / (coeff + 1)``; ties prefer the longer jump (larger coeff),
    then the smaller class index.
    """

    order: tuple[int, ...]
    jumps: tuple[tuple[int, int], ...]  # per class: (x-advance, y-advance)
    avail: tuple[int, ...]  # items of each class outside the cover


@dataclass(frozen=True)
class IndepLeaf:
    """One search leaf: a candidate increment-set class.

    ``maximal`` is the search-local verdict (not contained in the last
    maximal leaf); it matches true maximality whenever the run is exact.
    """

    counts: tuple[int, ...]
    endpoint: tuple[int, int]
    maximal: bool


def jump_geometry(cover: CoverClass, lift: LiftingData, wc: WeightClasses) -> JumpGeometry:
    jumps = tuple(
        (coeff + 1, w) for coeff, w in zip(lift.base_coeffs, wc.class_weights)
    )
    avail = tuple(size - c for size, c in zip(wc.sizes, cover.counts))
    # slope dy/dx ascending, compared exactly by cross products; ties prefer
    # the longer jump, then the smaller class index
    order = sorted(range(wc.sigma), key=lambda j: (_SlopeKey(jumps[j]), -jumps[j][0], j))
    return JumpGeometry(order=tuple(order), jumps=jumps, avail=avail)


class _SlopeKey:
    """Exact comparison of dy/dx slopes by cross-multiplication."""

    __slots__ = ("dx", "dy")

    def __init__(self, jump: tuple[int, int]):
        self.dx, self.dy = jump

    def __lt__(self, other: "_SlopeKey") -> bool:
        return self.dy * other.dx < other.dy * self.dx

    def __eq__(self, other) -> bool:
        return self.dy * other.dx == other.dy * self.dx


def segment_above_frontier(
    x: int, y: int, j: int, lift: LiftingData, jumps: tuple[tuple[int, int], ...]
) -> bool:
    """Conservative jump test from integer point ``(x, y)`` with class ``j``.

    True iff the straight segment to ``(x + dx, y + dy)`` stays strictly
    above the frontier at every abscissa ``x + 1 .. x + dx``; all in integer
    arithmetic (cross-multiplied by ``dx``).
    """
    dx, dy = jumps[j]
    for t in range(1, dx + 1):
        if dx * (y - lift.heavy_sum_at(x + t) + lift.surplus) + t * dy <= 0:
            return False
    return True


def jump_endpoint_clears(
    x: int, y: int, j: int, lift: LiftingData, jumps: tuple[tuple[int, int], ...]
) -> bool:
    """Endpoint-only test: the extended selection itself stays independent."""
    dx, dy = jumps[j]
    return y + dy > lift.heavy_sum_at(x + dx) - lift.surplus


def boundary_ok_jump(point: tuple[int, int], j: int, geom: JumpGeometry, lift: LiftingData) -> bool:
    """Public wrapper of the conservative segment test."""
    return segment_above_frontier(point[0], point[1], j, lift, geom.jumps)


class _ExactTracker:
    __slots__ = ("exact",)

    def __init__(self):
        self.exact = True


def _greedy(
    s: list[int],
    m: int,
    geom: JumpGeometry,
    lift: LiftingData,
    tracker: _ExactTracker | None,
) -> None:
    """Fill positions ``m+1 .. sigma`` of the slope order greedily, in place.

    Positions ``1..m`` (in slope order) are kept as given; every later class
    takes jumps while the conservative test passes and items remain.
    """
    jumps = geom.jumps
    x = y = 0
    for pos in range(m):
        j = geom.order[pos]
        dx, dy = jumps[j]
        x += s[j] * dx
        y += s[j] * dy
    for pos in range(m, len(geom.order)):
        j = geom.order[pos]
        s[j] = 0
        dx, dy = jumps[j]
        for _ in range(geom.avail[j]):
            if segment_above_frontier(x, y, j, lift, jumps):
                x += dx
                y += dy
                s[j] += 1
            else:
                if tracker is not None and jump_endpoint_clears(x, y, j, lift, jumps):
                    # pruned although the extended selection itself passes:
                    # the enumeration may now miss independent sets
                    tracker.exact = False
                break


def greedy_complete(
    s, m: int, geom: JumpGeometry, lift: LiftingData
) -> tuple[int, ...]:
    """Greedy completion keeping the first ``m`` slope-order entries fixed.

    With ``m = 0`` this yields the first leaf of the search.
    """
    out = list(s)
    _greedy(out, m, geom, lift, None)
    return tuple(out)


def _endpoint(s, geom: JumpGeometry) -> tuple[int, int]:
    x = y = 0
    for j, c in enumerate(s):
        dx, dy = geom.jumps[j]
        x += c * dx
        y += c * dy
    return (x, y)


def next_maximal(
    s, geom: JumpGeometry, lift: LiftingData
) -> tuple[int, ...] | None:
    """Next maximal leaf after ``s``, skipping leaves contained in ``s``.

    Backtracks on the last movable slope position (the final position never
    backtracks: removing from it always yields a subset of the current
    leaf), decrements, re-completes, and repeats while the result is still
    contained componentwise in the input.  Returns None when exhausted.
    """
    sigma = len(geom.order)
    init = tuple(s)
    cur = list(s)
    while True:
        star = None
        for pos in range(sigma - 2, -1, -1):
            if cur[geom.order[pos]] > 0:
                star = pos
                break
        if star is None:
            return None
        cur[geom.order[star]] -= 1
        _greedy(cur, star + 1, geom, lift, None)
        if not all(a <= b for a, b in zip(cur, init)):
            return tuple(cur)


class IndepSearch:
    """Stream of all search leaves for one cover, with maximality flags.

    ``exact`` starts True and is cleared as soon as one jump is pruned whose
    endpoint test would have passed; once the stream is exhausted it is the
    per-cover exactness verdict.  Single-owner state; distinct covers may be
    searched concurrently over shared lifting data.
    """

    def __init__(self, cover: CoverClass, lift: LiftingData, wc: WeightClasses):
        self.geometry = jump_geometry(cover, lift, wc)
        self.lift = lift
        self._tracker = _ExactTracker()

    @property
    def exact(self) -> bool:
        return self._tracker.exact

    def __iter__(self) -> Iterator[IndepLeaf]:
        geom = self.geometry
        sigma = len(geom.order)
        cur = [0] * sigma
        _greedy(cur, 0, geom, self.lift, self._tracker)
        last_maximal = tuple(cur)
        yield IndepLeaf(tuple(cur), _endpoint(cur, geom), True)
        while True:
            star = None
            for pos in range(sigma - 2, -1, -1):
                if cur[geom.order[pos]] > 0:
                    star = pos
                    break
            if star is None:
                return
            cur[geom.order[star]] -= 1
            _greedy(cur, star + 1, geom, self.lift, self._tracker)
            leaf = tuple(cur)
            maximal = not all(a <= b for a, b in zip(leaf, last_maximal))
            if maximal:
                last_maximal = leaf
            yield IndepLeaf(leaf, _endpoint(leaf, geom), maximal)


def enumerate_indep_classes(
    cover: CoverClass, lift: LiftingData, wc: WeightClasses
) -> tuple[list[IndepLeaf], bool]:
    """Materialized leaf list of one cover plus its exactness verdict."""
    search = IndepSearch(cover, lift, wc)
    leaves = list(search)
    return leaves, search.exact
