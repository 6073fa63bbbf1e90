"""Edge colorings of K_n and exact rainbow-copy counting."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import perm
from typing import Callable, Mapping, Optional

import numpy as np

from .errors import CapExceeded, InvalidInput
from .graphs import Graph, automorphism_count, copy_count, copy_image_chunks, edge_index

ENUMERATION_CAP = 1 << 20


class EdgeColoring:
    """An r-coloring of the edges of K_n.

    Colors are held in a read-only integer array indexed by the row-major
    position of each pair ``(a, b)``, ``a < b`` (see ``graphs.edge_index``).
    """

    __slots__ = ("n", "r", "colors")

    def __init__(self, n: int, r: int, colors):
        colors = np.array(colors, dtype=np.int64).reshape(-1)
        if n < 0 or r < 1:
            raise InvalidInput("need n >= 0 and r >= 1")
        if colors.shape[0] != n * (n - 1) // 2:
            raise InvalidInput(f"expected {n * (n - 1) // 2} edge colors, got {colors.shape[0]}")
        if colors.size and (colors.min() < 0 or colors.max() >= r):
            raise InvalidInput(f"colors must lie in [0, {r})")
        colors.setflags(write=False)
        self.n = n
        self.r = r
        self.colors = colors

    @classmethod
    def from_dict(cls, n: int, r: int, mapping: Mapping[tuple[int, int], int]) -> "EdgeColoring":
        colors = np.full(n * (n - 1) // 2, -1, dtype=np.int64)
        for (a, b), c in mapping.items():
            if a == b or not (0 <= a < n and 0 <= b < n):
                raise InvalidInput(f"bad edge ({a}, {b})")
            colors[edge_index(n, a, b)] = c
        if (colors < 0).any():
            raise InvalidInput("coloring is not total")
        return cls(n, r, colors)

    @classmethod
    def from_function(cls, n: int, r: int, fn: Callable[[int, int], int]) -> "EdgeColoring":
        return cls(n, r, [fn(a, b) for a, b in combinations(range(n), 2)])

    def color(self, a: int, b: int) -> int:
        if a == b:
            raise InvalidInput("K_n has no loops")
        return int(self.colors[edge_index(self.n, a, b)])

    def as_dict(self) -> dict[tuple[int, int], int]:
        return {e: int(c) for e, c in zip(combinations(range(self.n), 2), self.colors)}

    def matrix(self) -> np.ndarray:
        """n x n color matrix with -1 on the diagonal."""
        mat = np.full((self.n, self.n), -1, dtype=np.int64)
        iu = np.triu_indices(self.n, 1)
        mat[iu] = self.colors
        mat[iu[1], iu[0]] = self.colors
        return mat

    def relabel_vertices(self, perm_: list[int]) -> "EdgeColoring":
        """Coloring c' with c'(p[a], p[b]) = c(a, b)."""
        p = np.asarray(perm_)
        a, b = np.triu_indices(self.n, 1)
        new = np.empty_like(self.colors)
        new[edge_index(self.n, p[a], p[b])] = self.colors
        return EdgeColoring(self.n, self.r, new)

    def restrict(self, vertices) -> "EdgeColoring":
        """Induced coloring on ``vertices``, relabelled 0..len-1 in the given order."""
        vs = np.asarray(list(vertices), dtype=np.int64)
        a, b = np.triu_indices(len(vs), 1)
        return EdgeColoring(len(vs), self.r, self.colors[edge_index(self.n, vs[a], vs[b])])

    def relabel_colors(self, perm_: list[int]) -> "EdgeColoring":
        return EdgeColoring(self.n, self.r, np.asarray(perm_)[self.colors])

    def __eq__(self, other):
        return (
            isinstance(other, EdgeColoring)
            and (self.n, self.r) == (other.n, other.r)
            and np.array_equal(self.colors, other.colors)
        )

    def __hash__(self):
        return hash((self.n, self.r, self.colors.tobytes()))

    def __repr__(self):
        return f"EdgeColoring(n={self.n}, r={self.r})"


def parse_coloring_text(text: str) -> EdgeColoring:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows:
        raise InvalidInput("empty coloring file")
    try:
        n, r = int(rows[0][0]), int(rows[0][1])
        mapping = {}
        for row in rows[1:]:
            a, b, c = (int(x) for x in row)
            key = (min(a, b), max(a, b))
            if key in mapping:
                raise InvalidInput(f"edge {key} colored twice")
            mapping[key] = c
    except ValueError as exc:
        raise InvalidInput(f"malformed coloring file: {exc}") from None
    if len(mapping) != n * (n - 1) // 2:
        raise InvalidInput(f"coloring file lists {len(mapping)} edges, K_{n} has {n * (n - 1) // 2}")
    return EdgeColoring.from_dict(n, r, mapping)


def format_coloring_text(c: EdgeColoring) -> str:
    lines = [f"{c.n} {c.r}"]
    lines += [f"{a} {b} {col}" for (a, b), col in c.as_dict().items()]
    return "\n".join(lines) + "\n"


def read_coloring(path: str) -> EdgeColoring:
    with open(path) as fh:
        return parse_coloring_text(fh.read())


def write_coloring(c: EdgeColoring, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(format_coloring_text(c))


# ---------------------------------------------------------------------------
# counting


@dataclass(frozen=True)
class RainbowCount:
    copies: int
    total: int

    @property
    def density_per_copy(self) -> Fraction:
        return Fraction(self.copies, self.total) if self.total else Fraction(0)


def _rainbow_rows(edge_colors: np.ndarray, r: int) -> np.ndarray:
    """Boolean mask of rows whose entries are pairwise distinct."""
    k = edge_colors.shape[-1]
    if r <= 64:
        masks = np.zeros(edge_colors.shape[:-1], dtype=np.uint64)
        for j in range(k):
            masks |= np.left_shift(np.uint64(1), edge_colors[..., j].astype(np.uint64))
        return np.bitwise_count(masks) == k
    srt = np.sort(edge_colors, axis=-1)
    return (np.diff(srt, axis=-1) != 0).all(axis=-1)


def copy_edge_indices(h: Graph, n: int, first: Optional[int] = None):
    """Yield (N, e(h)) arrays of K_n edge indices, one row per copy of h."""
    us = [u for u, _ in h.edges]
    vs = [v for _, v in h.edges]
    for chunk in copy_image_chunks(h, n, first):
        yield edge_index(n, chunk[:, us], chunk[:, vs])


def _count_partition(h: Graph, c: EdgeColoring, first: Optional[int]) -> int:
    total = 0
    for idx in copy_edge_indices(h, c.n, first):
        total += int(_rainbow_rows(c.colors[idx], c.r).sum())
    return total


def count_rainbow(h: Graph, c: EdgeColoring, workers: int = 1) -> RainbowCount:
    """Count copies of ``h`` in K_n whose edges carry pairwise distinct colors."""
    if h.n_vertices > c.n:
        return RainbowCount(0, 0)
    total = copy_count(h, c.n)
    if h.e > c.r:
        return RainbowCount(0, total)
    if workers <= 1 or c.n < 2:
        copies = _count_partition(h, c, None)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            copies = sum(pool.map(lambda a: _count_partition(h, c, a), range(c.n)))
    return RainbowCount(copies, total)


def expected_uniform_count(h: Graph, r: int, n: int) -> Fraction:
    """Expected rainbow copies of ``h`` under a uniform random r-coloring of K_n."""
    e, v = h.e, h.n_vertices
    return Fraction(perm(r, e) * perm(n, v), r**e * automorphism_count(h))


def empirical_uniform_mean(h: Graph, r: int, n: int, cap: int = ENUMERATION_CAP) -> Fraction:
    """Exact average of ``count_rainbow`` over every r-coloring of K_n."""
    m = n * (n - 1) // 2
    space = r**m
    if space > cap:
        raise CapExceeded(f"{r}^{m} = {space} colorings exceeds cap {cap}")
    idx = np.concatenate(list(copy_edge_indices(h, n)) or [np.zeros((0, h.e), dtype=np.int64)])
    # every coloring as a row of base-r digits
    powers = r ** np.arange(m, dtype=np.int64)
    total = 0
    step = max(1, (1 << 22) // max(1, idx.size))
    for lo in range(0, space, step):
        codes = np.arange(lo, min(space, lo + step), dtype=np.int64)
        block = (codes[:, None] // powers[None, :]) % r
        total += int(_rainbow_rows(block[:, idx], r).sum())
    return Fraction(total, space)


def blowup_threshold(h: Graph, r: int, m: int) -> Fraction:
    """Rainbow count on K_m that a seed coloring must strictly exceed.

    Equals (m^v - m) (r)_e / (r^e |Aut(h)|); a seed above it beats the uniform
    coloring after iterated blowup.
    """
    e, v = h.e, h.n_vertices
    return Fraction((m**v - m) * perm(r, e), r**e * automorphism_count(h))


def minimal_beating_count(threshold: Fraction) -> int:
    """Smallest integer strictly greater than ``threshold``."""
    return threshold.numerator // threshold.denominator + 1


__all__ = [
    "EdgeColoring",
    "RainbowCount",
    "parse_coloring_text",
    "format_coloring_text",
    "read_coloring",
    "write_coloring",
    "copy_edge_indices",
    "count_rainbow",
    "expected_uniform_count",
    "empirical_uniform_mean",
    "blowup_threshold",
    "minimal_beating_count",
    "ENUMERATION_CAP",
]
