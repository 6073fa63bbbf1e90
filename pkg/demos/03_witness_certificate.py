"""Perturbing the uniform coloring to beat it.

For a pattern with a cycle, a two-block graphon that tilts each color by a
small signed amount raises the rainbow density above the uniform value.
The certificate lists the exact gain as a polynomial in the tilt, whose
lowest term sits at the girth.
"""

from fractions import Fraction

from rainbow_lab import Graph, build_witness_graphon, certify_uncommon, rainbow_density, select_k

cert = certify_uncommon(Graph.cycle(3), 3)
print(cert.format_text())

k4_pendant = Graph.complete(4).with_pendant()
for r in (7, 8, 9):
    cert = certify_uncommon(k4_pendant, r)
    print(f"K4 plus pendant, r={r}: k={cert.k} eps={cert.epsilon} gap={cert.gap} lowest degree {cert.lowest_degree}")

# the tilt can be chosen by hand, as long as every cell stays a probability
w = build_witness_graphon(5, select_k(5, 5), Fraction(1, 10))
print("C5 density at eps=1/10:", rainbow_density(Graph.cycle(5), w).value)
