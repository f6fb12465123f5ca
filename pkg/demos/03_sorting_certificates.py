"""Trace a sorting network and certify the run optimal without an LP solver.

The network's comparison polytope relaxes each comparator to "upper wire at
most the minimum, lower wire at least the maximum, mass preserved".  The
traced run is always feasible; the dual certificate proves it minimizes any
non-decreasing non-negative objective on the final copy, in exact rationals.
"""

from fractions import Fraction

from sparseknap import apply, dual_certificate, insertion_network, oddeven_network
from sparseknap.networks import network_to_1based

net = oddeven_network(4)
print(f"4-wire odd-even network, comparators (1-based): {network_to_1based(net)}")

values = [4, 2, 1, 3]
out, phi = apply(net, values)
print(f"input {values} -> output {out}")
for l, value in enumerate(values):
    path = " -> ".join(str(p + 1) for p in phi[l])
    print(f"  entry {value} travels wires {path}")

xs = [Fraction(1), Fraction(1, 2), Fraction(1, 4), Fraction(3, 4)]
vs = [0, 1, 2, 3]
cert = dual_certificate(net, xs, vs)
print(f"\nobjective coefficients {vs} against point {[str(x) for x in xs]}")
print(f"certified minimum of the final copy: {cert.objective}")
print(f"comparator midpoints: {[str(b) for b in cert.beta]}")

sizes = {m: (insertion_network(m).size, oddeven_network(m).size) for m in (4, 8, 16, 32, 64)}
print("\ncomparator counts (insertion vs odd-even):")
for m, (ins, oe) in sizes.items():
    print(f"  {m:3d} wires: {ins:5d} vs {oe:4d}")
