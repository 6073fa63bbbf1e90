"""Counting rainbow cycles in the two seed colorings.

The K5 coloring with 4 colors holds 8 rainbow 4-cycles and the K8 coloring
with 5 colors holds 128 rainbow 5-cycles. Both beat the count a seed needs
for its iterated blowup to outdo a uniformly random coloring.
"""

from rainbow_lab import (
    Graph,
    blowup_threshold,
    count_rainbow,
    expected_uniform_count,
    fixture,
    minimal_beating_count,
)

for name, length in [("K5", 4), ("K8", 5)]:
    seed = fixture(name)
    h = Graph.cycle(length)
    found = count_rainbow(h, seed)
    need = blowup_threshold(h, seed.r, seed.n)
    print(f"{name} with {seed.r} colors: {found.copies} of {found.total} copies of C{length} are rainbow")
    print(f"  threshold {need} ({float(need):.3f}), so {minimal_beating_count(need)} copies suffice")
    print(f"  a uniform coloring of the same K_n expects {expected_uniform_count(h, seed.r, seed.n)}")

# the color matrix of the small seed, -1 on the diagonal
print(fixture("K5").matrix())
