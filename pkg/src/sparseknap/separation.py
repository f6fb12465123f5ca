"""Exact separation of lifted cover inequalities at a fractional point.

For every cover class and every increment-set class the most violated member
inequality is found by per-class sorting alone: the increment set grabs the
largest point values of its class, the cover grabs the smallest remaining
ones unless its class coefficient is zero (then the largest, since zeros
make small values irrelevant).  Rank coefficients turn that choice into a
dot product with the class-sorted point, so each class pair costs O(sigma)
after one O(n log n) sort.  All point arithmetic is exact: input floats are
promoted to rationals once and never rounded.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .covers import LiftingData, compute_lifting, iter_minimal_cover_classes
from .errors import DimensionMismatch
from .indep import IndepSearch
from .knapsack import Knapsack, WeightClasses, check_tuple_bounds, promote_point

DEFAULT_TOLERANCE = Fraction(1, 10**9)


@dataclass(frozen=True)
class LiftedCut:
    """Dense lifted cover inequality ``coeffs . x <= rhs`` with provenance."""

    coeffs: tuple[int, ...]
    rhs: int
    cover: tuple[int, ...]
    indep: tuple[int, ...]
    gub_strengthened: bool = False
    exact_lifting: bool = True
    violation: Fraction | None = None


@dataclass(frozen=True)
class SeparateOptions:
    tolerance: Fraction = DEFAULT_TOLERANCE
    max_cuts: int | None = None
    deadline_s: float | None = None
    use_gubs: bool = True
    reverse: bool | None = None  # cover enumeration direction (None = auto)


@dataclass
class SeparationResult:
    """Violated cuts sorted by violation (descending), plus run stats."""

    cuts: list[LiftedCut]
    classes_scanned: int = 0
    truncated: bool = False
    elapsed_s: float = 0.0


def violation(cut: LiftedCut, xhat: Sequence) -> Fraction:
    """Exact slack of the point against the cut: ``coeffs . x - rhs``."""
    xs = promote_point(xhat)
    if len(xs) != len(cut.coeffs):
        raise DimensionMismatch(
            f"point has {len(xs)} entries, cut has {len(cut.coeffs)}"
        )
    return sum((c * x for c, x in zip(cut.coeffs, xs)), Fraction(0)) - cut.rhs


def rank_coefficients(
    cover: Sequence[int], indep: Sequence[int], lift: LiftingData, wc: WeightClasses
) -> list[list[int]]:
    """Per-class coefficient ladders against the ascending-sorted point.

    Position ``i`` of class ``j`` applies to the item holding the ``i``-th
    smallest point value of that class.  With a positive base coefficient the
    ladder is 1 on the cover ranks (bottom), the base in the middle and
    base+1 on the increment ranks (top); with base zero it is 0 below and 1
    on the top ``c + s`` ranks.
    """
    out = []
    for j in range(wc.sigma):
        size = wc.sizes[j]
        c, s = cover[j], indep[j]
        base = lift.base_coeffs[j]
        if base >= 1:
            ladder = [1] * c + [base] * (size - c - s) + [base + 1] * s
        else:
            ladder = [0] * (size - c - s) + [1] * (c + s)
        out.append(ladder)
    return out


def max_representative(
    cover: Sequence[int],
    indep: Sequence[int],
    lift: LiftingData,
    xhat: Sequence,
    wc: WeightClasses,
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Concrete index sets of the class member with the largest left side.

    Per class: the increment set takes the ``s`` largest point values; the
    cover then takes the ``c`` smallest remaining values, or the largest when
    the class base coefficient is zero.  Ties go to the smaller index.
    """
    xs = promote_point(xhat, wc.n)
    totals = [c + s for c, s in zip(cover, indep)]
    check_tuple_bounds(totals, wc)
    cover_idx: list[int] = []
    indep_idx: list[int] = []
    for j, group in enumerate(wc.members):
        desc = sorted(group, key=lambda i: (-xs[i], i))
        take_s = desc[: indep[j]]
        rest = [i for i in desc if i not in take_s]
        if lift.base_coeffs[j] >= 1:
            take_c = sorted(rest, key=lambda i: (xs[i], i))[: cover[j]]
        else:
            take_c = rest[: cover[j]]
        indep_idx.extend(take_s)
        cover_idx.extend(take_c)
    return tuple(sorted(cover_idx)), tuple(sorted(indep_idx))


def assemble_cut(
    cover_idx: Sequence[int],
    indep_idx: Sequence[int],
    lift: LiftingData,
    wc: WeightClasses,
    exact_lifting: bool = True,
) -> LiftedCut:
    """Dense inequality for explicit index sets: 1 on the cover, base+1 on
    the increment set, the base elsewhere; right side is cover size - 1."""
    cover_set = set(cover_idx)
    indep_set = set(indep_idx)
    if cover_set & indep_set:
        raise ValueError("cover and increment set overlap")
    n = wc.n
    item_class = {}
    for j, group in enumerate(wc.members):
        for i in group:
            item_class[i] = j
    coeffs = []
    for i in range(n):
        if i in cover_set:
            coeffs.append(1)
        elif i in indep_set:
            coeffs.append(lift.base_coeffs[item_class[i]] + 1)
        else:
            coeffs.append(lift.base_coeffs[item_class[i]])
    cover_counts = [0] * wc.sigma
    indep_counts = [0] * wc.sigma
    for i in cover_set:
        cover_counts[item_class[i]] += 1
    for i in indep_set:
        indep_counts[item_class[i]] += 1
    return LiftedCut(
        coeffs=tuple(coeffs),
        rhs=len(cover_set) - 1,
        cover=tuple(cover_counts),
        indep=tuple(indep_counts),
        exact_lifting=exact_lifting,
    )


def gub_strengthen(
    cut: LiftedCut,
    gubs: Sequence[Sequence[int]],
    cover_idx: Sequence[int],
    indep_idx: Sequence[int],
    lift: LiftingData,
    wc: WeightClasses,
) -> LiftedCut:
    """Raise zero coefficients justified by shared bound groups.

    In a class with base coefficient zero, an item outside the cut that
    shares a group with a used item of the same class can never join it in a
    feasible point, so its coefficient lifts from 0 to 1.  Classes with a
    positive base are untouched.
    """
    used = set(cover_idx) | set(indep_idx)
    group_of = {}
    for g, group in enumerate(gubs):
        for i in group:
            group_of[i] = g
    coeffs = list(cut.coeffs)
    raised = False
    for j, group in enumerate(wc.members):
        if lift.base_coeffs[j] != 0:
            continue
        used_groups = {group_of[i] for i in group if i in used}
        for i in group:
            if i not in used and group_of[i] in used_groups:
                if coeffs[i] == 0:
                    coeffs[i] = 1
                    raised = True
    if not raised:
        return cut
    return replace(cut, coeffs=tuple(coeffs), gub_strengthened=True)


def exact_maximal_tuples(
    lift: LiftingData, wc: WeightClasses, cover_counts: Sequence[int]
) -> list[tuple[int, ...]]:
    """Maximal increment-set classes by the exact cardinality-ordered scan.

    Walks every tuple within availability by increasing size, memoizing
    independence verdicts (a tuple qualifies when its own inequality holds
    and all one-unit-smaller tuples qualify); maximal means no one-unit
    extension qualifies.  Polynomial for a fixed class count; used as the
    fallback when the jump search had to prune lossily.
    """
    from itertools import product

    avail = tuple(size - c for size, c in zip(wc.sizes, cover_counts))
    ok: dict[tuple[int, ...], bool] = {}
    for t in sorted(product(*(range(a + 1) for a in avail)), key=sum):
        if sum(t) == 0:
            ok[t] = True
            continue
        weight = sum(q * w for q, w in zip(t, wc.class_weights))
        advance = sum(q * (lift.base_coeffs[j] + 1) for j, q in enumerate(t))
        verdict = weight > lift.heavy_sum_at(advance) - lift.surplus
        if verdict:
            for j in range(len(t)):
                if t[j] > 0 and not ok[t[:j] + (t[j] - 1,) + t[j + 1 :]]:
                    verdict = False
                    break
        ok[t] = verdict
    out = []
    for t, good in ok.items():
        if not good:
            continue
        extendable = False
        for j in range(len(t)):
            if t[j] < avail[j] and ok[t[:j] + (t[j] + 1,) + t[j + 1 :]]:
                extendable = True
                break
        if not extendable:
            out.append(t)
    out.sort()
    return out


def _class_prefix_sums(xs, wc: WeightClasses) -> list[list[Fraction]]:
    out = []
    for group in wc.members:
        vals = sorted(xs[i] for i in group)
        acc = [Fraction(0)]
        for v in vals:
            acc.append(acc[-1] + v)
        out.append(acc)
    return out


def _pair_lhs(
    cover: Sequence[int],
    indep: Sequence[int],
    lift: LiftingData,
    wc: WeightClasses,
    prefix: list[list[Fraction]],
) -> Fraction:
    """Left side of the strongest member inequality, via the rank ladders."""
    total = Fraction(0)
    for j in range(wc.sigma):
        size = wc.sizes[j]
        c, s = cover[j], indep[j]
        acc = prefix[j]
        base = lift.base_coeffs[j]
        if base >= 1:
            total += acc[c]
            total += base * (acc[size - s] - acc[c])
            total += (base + 1) * (acc[size] - acc[size - s])
        else:
            total += acc[size] - acc[size - c - s]
    return total


def separate(
    k: Knapsack,
    xhat: Sequence,
    gubs: Sequence[Sequence[int]] | None = None,
    opts: SeparateOptions | None = None,
) -> SeparationResult:
    """All violated lifted cover inequalities at a fractional point.

    Scans every (cover class, increment class) pair; a pair whose strongest
    member beats the tolerance is materialized through its representative
    index sets, optionally strengthened with bound-group information, and
    reported.  Identical inequalities from different provenances are reported
    once.  The result is deterministic: sorted by violation, then
    lexicographically by coefficients.
    """
    opts = opts or SeparateOptions()
    started = time.perf_counter()
    wc = k.classes()
    xs = promote_point(xhat, k.n)
    prefix = _class_prefix_sums(xs, wc)
    found: dict[tuple[tuple[int, ...], int], LiftedCut] = {}
    scanned = 0
    truncated = False
    deadline = (
        started + opts.deadline_s if opts.deadline_s is not None else None
    )
    for cover in iter_minimal_cover_classes(wc, k.capacity, reverse=opts.reverse):
        if deadline is not None and time.perf_counter() > deadline:
            truncated = True
            break
        lift = compute_lifting(cover, wc, k.capacity)
        search = IndepSearch(cover, lift, wc)
        candidates = [leaf.counts for leaf in search if leaf.maximal]
        exact = search.exact
        if not exact:
            # the jump search pruned lossily for this cover; recover the
            # missed classes with the exact polynomial scan
            candidates = exact_maximal_tuples(lift, wc, cover.counts)
        for indep_counts in candidates:
            scanned += 1
            lhs = _pair_lhs(cover.counts, indep_counts, lift, wc, prefix)
            excess = lhs - cover.rhs
            if excess <= opts.tolerance:
                continue
            cover_idx, indep_idx = max_representative(
                cover.counts, indep_counts, lift, xs, wc
            )
            cut = assemble_cut(cover_idx, indep_idx, lift, wc, exact_lifting=exact)
            if gubs is not None and opts.use_gubs:
                cut = gub_strengthen(cut, gubs, cover_idx, indep_idx, lift, wc)
            cut = replace(cut, violation=violation(cut, xs))
            key = (cut.coeffs, cut.rhs)
            kept = found.get(key)
            if kept is None or cut.violation > kept.violation:
                found[key] = cut
    cuts = sorted(found.values(), key=lambda c: (-c.violation, c.coeffs))
    if opts.max_cuts is not None and len(cuts) > opts.max_cuts:
        cuts = cuts[: opts.max_cuts]
        truncated = True
    return SeparationResult(
        cuts=cuts,
        classes_scanned=scanned,
        truncated=truncated,
        elapsed_s=time.perf_counter() - started,
    )
