"""Monte Carlo checks and a small hill climb.

Sampling colorings of K_200 from a graphon and counting rainbow triangles
recovers the exact density within a few standard errors. A hill climb over
4-colorings of K5 rediscovers a seed with 8 rainbow 4-cycles.
"""

from rainbow_lab import Graph, build_witness_graphon, certify_uncommon, uniform_graphon
from rainbow_lab.stochastic import SearchConfig, estimate_density, local_search

triangle = Graph.cycle(3)
rep = estimate_density(triangle, uniform_graphon(3), 200, 100_000, rng_seed=1)
print(f"uniform: {float(rep.empirical_mean):.4f} vs {rep.exact_target} (se {float(rep.standard_error_bound):.4f})")

cert = certify_uncommon(triangle, 3)
w = build_witness_graphon(3, cert.k, cert.epsilon)
rep = estimate_density(triangle, w, 200, 100_000, rng_seed=2)
print(f"witness: {float(rep.empirical_mean):.4f} vs {rep.exact_target} consistent={rep.consistent()}")

best = local_search(SearchConfig(5, 4, Graph.cycle(4), seed=0))
print(f"search: {best.count.copies} rainbow C4 (threshold {float(best.threshold):.3f})")
print(best.coloring.matrix())
