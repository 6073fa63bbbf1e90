"""Iterated blowup of a seed coloring and the bundled seed fixtures.

Vertices of K_{m^d} are base-m strings of length d, most significant digit
first.  The edge {x, y} takes the seed color of the first digit pair where x
and y differ.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

import numpy as np

from .coloring import EdgeColoring, count_rainbow, parse_coloring_text
from .errors import CapExceeded, InvalidInput
from .graphs import Graph

VERTEX_BUDGET = 10**4
FIXTURE_NAMES = ("K5", "K8")


@dataclass(frozen=True)
class BlowupSpec:
    seed: EdgeColoring
    depth: int

    def __post_init__(self):
        if self.seed.n < 2:
            raise InvalidInput("seed must color K_m with m >= 2")
        if self.depth < 1:
            raise InvalidInput("depth must be at least 1")

    @property
    def n(self) -> int:
        return self.seed.n ** self.depth


def blowup_coloring(spec: BlowupSpec, vertex_budget: int = VERTEX_BUDGET) -> EdgeColoring:
    m, d = spec.seed.n, spec.depth
    n = spec.n
    if n > vertex_budget:
        raise CapExceeded(f"m^d = {n} vertices exceeds budget {vertex_budget}")
    seed = spec.seed.matrix()
    dtype = np.int16 if spec.seed.r < 2**15 else np.int64
    mat = seed.astype(dtype)
    for level in range(1, d):
        size = m**level
        # off-diagonal blocks take the seed color of the leading digits
        big = np.kron(seed.astype(dtype), np.ones((size, size), dtype=dtype))
        for a in range(m):
            big[a * size:(a + 1) * size, a * size:(a + 1) * size] = mat
        mat = big
    iu = np.triu_indices(n, 1)
    return EdgeColoring(n, spec.seed.r, mat[iu])


def blowup_lower_bound(ell: int, m: int, vH: int, d: int) -> int:
    """sum_{k=1..d} ell * m^(k-1) * (m^(d-k))^vH."""
    if ell < 0:
        raise InvalidInput("ell must be non-negative")
    return sum(ell * m ** (k - 1) * (m ** (d - k)) ** vH for k in range(1, d + 1))


@dataclass(frozen=True)
class BlowupReport:
    n: int
    seed_count: int
    actual: int
    lower_bound: int

    @property
    def holds(self) -> bool:
        return self.actual >= self.lower_bound


def verify_blowup(h: Graph, spec: BlowupSpec, workers: int = 1,
                  vertex_budget: int = VERTEX_BUDGET) -> BlowupReport:
    ell = count_rainbow(h, spec.seed, workers).copies
    big = blowup_coloring(spec, vertex_budget)
    actual = count_rainbow(h, big, workers).copies
    bound = blowup_lower_bound(ell, spec.seed.n, h.n_vertices, spec.depth)
    return BlowupReport(big.n, ell, actual, bound)


def fixture(name: str) -> EdgeColoring:
    """The 4-coloring of K5 (``"K5"``) or the 5-coloring of K8 (``"K8"``)."""
    if name not in FIXTURE_NAMES:
        raise InvalidInput(f"unknown fixture {name!r}; choose from {FIXTURE_NAMES}")
    text = resources.files("rainbow_lab").joinpath("data").joinpath(f"{name}.txt").read_text()
    return parse_coloring_text(text)


def fixtures() -> dict[str, EdgeColoring]:
    return {name: fixture(name) for name in FIXTURE_NAMES}
