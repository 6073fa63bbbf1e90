"""Iterated blowup of the K5 seed.

Each vertex of the seed is replaced by a copy of the seed, and edges
between different copies take the color of the seed edge they project to.
Rainbow copies grow at least as fast as the recursive bound predicts.
"""

from rainbow_lab import BlowupSpec, Graph, blowup_coloring, fixture, verify_blowup

seed = fixture("K5")
for depth in (1, 2, 3):
    report = verify_blowup(Graph.cycle(4), BlowupSpec(seed, depth))
    print(f"depth {depth}: K{report.n} has {report.actual} rainbow C4, bound {report.lower_bound}")

big = blowup_coloring(BlowupSpec(seed, 2))
print("first block reproduces the seed:", big.restrict(range(5)) == seed)
