"""Walk through cover-class enumeration and lifting data on a tiny knapsack.

Covers with the same number of items in every weight class behave
identically, so enumerating count tuples instead of subsets collapses an
exponential family into a handful of classes.
"""

from sparseknap import (
    class_profile,
    compute_lifting,
    first_minimal_cover,
    iter_minimal_cover_classes,
    normalize,
)
from sparseknap.oracle import minimal_cover_sets

k = normalize([3, 3, 5, 5], 8)
wc = class_profile(k)
print(f"knapsack: weights {k.weights}, capacity {k.capacity}")
print(f"weight classes: {wc.class_weights} with members {wc.members}")

print("\nexplicit minimal covers (oracle view):")
for mask in minimal_cover_sets(k.weights, k.capacity):
    items = [i + 1 for i in range(k.n) if mask >> i & 1]
    print(f"  items {items}")

print("\nequivalence classes (what the library enumerates):")
for cover in iter_minimal_cover_classes(wc, k.capacity):
    lift = compute_lifting(cover, wc, k.capacity)
    print(
        f"  counts {cover.counts}: weight {cover.weight(wc)},"
        f" right side {cover.rhs}, surplus {lift.surplus},"
        f" base coefficients {lift.base_coeffs}"
    )

first = first_minimal_cover(wc, k.capacity)
print(f"\nfirst class without scanning: {first.counts}")

# a classic blow-up: many ones and a single two
big = normalize([1] * 50 + [2], 25)
classes = list(iter_minimal_cover_classes(class_profile(big), big.capacity))
print(
    f"\n51-item instance has {len(classes)} classes"
    f" ({', '.join(str(c.counts) for c in classes)})"
    " even though it has billions of minimal covers"
)
