"""Two-column lexicographic order: explicit cuts vs the compact system.

Binary n x 2 matrices whose first column is lexicographically at least the
second admit exactly 2^(n-1) lifted cover cuts; one auxiliary variable per
middle row replaces them with linearly many rows.  Both views are compared
pointwise below.
"""

from sparseknap import (
    OrbisackSpec,
    enumerate_orbisack_lcis,
    orbisack_ef,
    orbisack_point_check,
    write_lp,
)

n = 4
cuts = enumerate_orbisack_lcis(n)
print(f"{len(cuts)} explicit cuts for {n} rows; the first three:")
for cut in cuts[:3]:
    print(f"  col1 {cut.col1}, col2 {cut.col2}, rhs {cut.rhs} (pivot row {cut.istar})")

spec = OrbisackSpec(n=n, max_rows=n)
agree = total = accepted = 0
for a in range(1 << n):
    for b in range(1 << n):
        matrix = [[a >> (n - 1 - i) & 1, b >> (n - 1 - i) & 1] for i in range(n)]
        compact = orbisack_point_check(spec, matrix)
        explicit = all(c.lhs(matrix) <= c.rhs for c in cuts)
        total += 1
        agree += compact == explicit == (a >= b)
        accepted += compact
print(f"\ncompact == explicit == lexicographic on {agree}/{total} matrices")
print(f"accepted matrices: {accepted} (= 2^n (2^n + 1) / 2)")

print("\ncompact system truncated to 2 rows:")
print(write_lp(orbisack_ef(OrbisackSpec(n=4, max_rows=2))))
