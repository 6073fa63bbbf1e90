"""Exact rainbow densities of step coloring graphons.

A uniform r-coloring gives every pattern the same closed-form density, and
any finite coloring turns into a graphon whose homomorphism density
matches the labelled count in the coloring.
"""

from fractions import Fraction

import numpy as np

from rainbow_lab import (
    EdgeColoring,
    Graph,
    associated_graphon,
    baseline_density,
    rainbow_density,
    rainbow_hom_count,
    uniform_graphon,
)

triangle = Graph.cycle(3)
print("triangle, 3 colors:", rainbow_density(triangle, uniform_graphon(3)).value)

for r in range(4, 9):
    h = Graph.cycle(4)
    exact = rainbow_density(h, uniform_graphon(r)).value
    print(f"C4, r={r}: density {exact}, closed form {baseline_density(h, r)}")

rng = np.random.default_rng(7)
c = EdgeColoring(6, 4, rng.integers(0, 4, size=15))
w = associated_graphon(c)
t = rainbow_density(Graph.cycle(4), w).value
print("random 4-coloring of K6, C4 density:", t)
print("times 6^4:", t * 6**4, "labelled rainbow maps:", rainbow_hom_count(Graph.cycle(4), c))
assert t * 6**4 == rainbow_hom_count(Graph.cycle(4), c)
assert rainbow_density(triangle, uniform_graphon(3)).value == Fraction(2, 9)
