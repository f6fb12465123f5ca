"""Emit a model that enforces an entire class of lifted cover inequalities.

The model carries one copy of the variables per comparison step; the final
copy is class-wise sorted whenever that helps the single rank row, so one
inequality dominates every member of the class.  Membership of a concrete
point is decided by sorting alone.
"""

from sparseknap import (
    CoverClass,
    class_ef,
    class_profile,
    compute_lifting,
    ef_membership,
    iter_minimal_cover_classes,
    normalize,
    write_lp,
)

k = normalize([3, 3, 5, 5], 8)
cover = CoverClass((2, 1))
model = class_ef(k, cover, (0, 0))
print(write_lp(model))

for point in ([0.9, 0.4, 0.8, 0.7], [0.5, 0.5, 0.5, 0.5], [1, 0, 1, 0]):
    verdict = ef_membership(k, cover, (0, 0), point)
    print(f"point {point}: {'satisfies' if verdict else 'violates'} the class")

# model size grows with the network, not with the member count
big = normalize([2] * 30 + [5] * 30, 60)
wc = class_profile(big)
cover_big = next(iter(iter_minimal_cover_classes(wc, big.capacity)))
lift = compute_lifting(cover_big, wc, big.capacity)
model_big = class_ef(big, cover_big, (0,) * wc.sigma)
print(
    f"\n60-item instance, cover class {cover_big.counts}:"
    f" {model_big.var_count()} variables, {model_big.row_count()} rows"
)
