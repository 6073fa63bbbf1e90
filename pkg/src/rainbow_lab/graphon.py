"""Step coloring graphons and exact rainbow homomorphism densities.

A step coloring graphon splits [0, 1] into ``q`` blocks of rational measure
and assigns every color a symmetric q x q matrix of rationals; the color
matrices sum to 1 cellwise.  Densities are computed exactly with
``fractions.Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from math import lcm, perm
from typing import Sequence

import numpy as np

from .coloring import EdgeColoring
from .errors import CapExceeded, ComplexityGuard, InvalidInput
from .graphs import Graph

DENSITY_BUDGET = 10**9
HOM_COUNT_CAP = 10**7

Matrix = tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class StepColoringGraphon:
    """r color planes over a q-block partition of [0, 1].

    ``associated`` marks graphons built from a finite coloring: their diagonal
    cells are zero in every color and are exempt from the partition-of-unity
    check.
    """

    r: int
    q: int
    block_weights: tuple[Fraction, ...]
    values: tuple[Matrix, ...]
    associated: bool = field(default=False)

    def __post_init__(self):
        r, q = self.r, self.q
        if r < 1 or q < 1:
            raise InvalidInput("need r >= 1 and q >= 1")
        bw = tuple(Fraction(x) for x in self.block_weights)
        if len(bw) != q or any(x <= 0 for x in bw) or sum(bw) != 1:
            raise InvalidInput("block weights must be q positive rationals summing to 1")
        if len(self.values) != r:
            raise InvalidInput(f"expected {r} color planes")
        vals = []
        for plane in self.values:
            if len(plane) != q or any(len(row) != q for row in plane):
                raise InvalidInput("each color plane must be q x q")
            vals.append(tuple(tuple(Fraction(x) for x in row) for row in plane))
        for i, plane in enumerate(vals):
            for a in range(q):
                for b in range(q):
                    x = plane[a][b]
                    if not 0 <= x <= 1:
                        raise InvalidInput(f"value {x} of color {i} at ({a}, {b}) outside [0, 1]")
                    if x != plane[b][a]:
                        raise InvalidInput(f"color {i} is not symmetric at ({a}, {b})")
        for a in range(q):
            for b in range(q):
                if self.associated and a == b:
                    continue
                if sum(plane[a][b] for plane in vals) != 1:
                    raise InvalidInput(f"colors do not sum to 1 at cell ({a}, {b})")
        object.__setattr__(self, "block_weights", bw)
        object.__setattr__(self, "values", tuple(vals))

    def permute_colors(self, order: Sequence[int]) -> "StepColoringGraphon":
        return StepColoringGraphon(self.r, self.q, self.block_weights,
                                   tuple(self.values[i] for i in order), self.associated)

    def split_block(self, a: int) -> "StepColoringGraphon":
        """Split block ``a`` into two equal halves carrying the same values."""
        idx = list(range(self.q))
        idx.insert(a + 1, a)
        bw = list(self.block_weights)
        bw[a] /= 2
        bw.insert(a + 1, bw[a])
        planes = tuple(tuple(tuple(p[x][y] for y in idx) for x in idx) for p in self.values)
        return StepColoringGraphon(self.r, self.q + 1, tuple(bw), planes, self.associated)


@dataclass(frozen=True)
class DensityResult:
    value: Fraction
    injection_count: int


def uniform_graphon(r: int) -> StepColoringGraphon:
    if r < 1:
        raise InvalidInput("r must be positive")
    return StepColoringGraphon(r, 1, (Fraction(1),), tuple(((Fraction(1, r),),) for _ in range(r)))


def associated_graphon(c: EdgeColoring) -> StepColoringGraphon:
    """Block-indicator graphon of a coloring of K_n (n blocks of measure 1/n).

    Diagonal cells are 0 in every color.
    """
    n, r = c.n, c.r
    mat = c.matrix()
    one, zero = Fraction(1), Fraction(0)
    planes = tuple(
        tuple(tuple(one if mat[a, b] == i else zero for b in range(n)) for a in range(n))
        for i in range(r)
    )
    return StepColoringGraphon(r, n, (Fraction(1, n),) * n, planes, associated=True)


def _integer_planes(w: StepColoringGraphon):
    """Scale every value by a common denominator; returns (int planes, denom)."""
    den = 1
    for plane in w.values:
        for row in plane:
            for x in row:
                den = lcm(den, x.denominator)
    planes = [[[int(x * den) for x in row] for row in plane] for plane in w.values]
    return planes, den


def _rect_permanent(cols: list[list[int]], k: int) -> int:
    """Sum over injections j -> color of prod_j cols[color][j].

    ``cols[i][j]`` is the weight of giving pattern edge j the color i.  Dynamic
    programme over colors with the set of already-colored edges as state.
    """
    full = (1 << k) - 1
    state = {0: 1}
    for weights in cols:
        nxt = dict(state)
        for used, acc in state.items():
            free = full & ~used
            while free:
                bit = free & -free
                free ^= bit
                wj = weights[bit.bit_length() - 1]
                if wj:
                    key = used | bit
                    nxt[key] = nxt.get(key, 0) + acc * wj
        state = nxt
    return state.get(full, 0)


def rainbow_density(h: Graph, w: StepColoringGraphon, budget: int = DENSITY_BUDGET,
                    method: str = "dp") -> DensityResult:
    """Exact rainbow homomorphism density of ``h`` in ``w``.

    Sums, over injective color assignments of the pattern edges and over block
    assignments of the pattern vertices, the product of the cell values times
    the block measures.  ``method="dp"`` evaluates the color sum per block
    assignment as a rectangular permanent; ``method="direct"`` enumerates both
    sums literally.
    """
    e, v, r, q = h.e, h.n_vertices, w.r, w.q
    injections = perm(r, e)
    if injections == 0:
        return DensityResult(Fraction(0), 0)
    if injections * q**v > budget:
        raise ComplexityGuard(f"(r)_e * q^v = {injections * q ** v} exceeds budget {budget}")
    planes, den = _integer_planes(w)
    bw_den = lcm(*(x.denominator for x in w.block_weights))
    bw = [int(x * bw_den) for x in w.block_weights]
    total = 0
    if method == "dp":
        for blocks in product(range(q), repeat=v):
            weight = 1
            for b in blocks:
                weight *= bw[b]
            cols = [[planes[i][blocks[a]][blocks[b]] for a, b in h.edges] for i in range(r)]
            total += weight * _rect_permanent(cols, e)
    elif method == "direct":
        for blocks in product(range(q), repeat=v):
            weight = 1
            for b in blocks:
                weight *= bw[b]
            inner = 0
            for inj in permutations(range(r), e):
                term = 1
                for (a, b), color in zip(h.edges, inj):
                    term *= planes[color][blocks[a]][blocks[b]]
                    if not term:
                        break
                inner += term
            total += weight * inner
    else:
        raise ValueError(f"unknown method {method!r}")
    return DensityResult(Fraction(total, den**e * bw_den**v), injections)


def baseline_density(h: Graph, r: int) -> Fraction:
    """Rainbow density of the uniform r-coloring: (r)_e / r^e."""
    return Fraction(perm(r, h.e), r**h.e)


def rainbow_hom_count(h: Graph, c: EdgeColoring, cap: int = HOM_COUNT_CAP) -> int:
    """Number of maps V(h) -> [n] sending pattern edges to rainbow K_n edges."""
    n, v = c.n, h.n_vertices
    if n**v > cap:
        raise CapExceeded(f"n^v = {n ** v} exceeds cap {cap}")
    if h.e == 0:
        return n**v
    maps = np.array(list(product(range(n), repeat=v)), dtype=np.int64).reshape(-1, v)
    mat = c.matrix()
    cols = np.stack([mat[maps[:, a], maps[:, b]] for a, b in h.edges], axis=1)
    ok = (cols >= 0).all(axis=1)
    srt = np.sort(cols, axis=1)
    ok &= (np.diff(srt, axis=1) != 0).all(axis=1)
    return int(ok.sum())


# ---------------------------------------------------------------------------
# text format: "r q", q block weights, then r matrices of q x q fractions


def format_graphon_text(w: StepColoringGraphon) -> str:
    lines = [f"{w.r} {w.q}", " ".join(str(x) for x in w.block_weights)]
    for plane in w.values:
        lines += [" ".join(str(x) for x in row) for row in plane]
    return "\n".join(lines) + "\n"


def parse_graphon_text(text: str) -> StepColoringGraphon:
    """Parse the graphon text format.

    A graphon whose diagonal cells are zero in every color (while off-diagonal
    cells sum to 1) is read back as an associated graphon.
    """
    tokens = text.split()
    try:
        r, q = int(tokens[0]), int(tokens[1])
        nums = [Fraction(t) for t in tokens[2:]]
    except (IndexError, ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"malformed graphon file: {exc}") from None
    if len(nums) != q + r * q * q:
        raise InvalidInput(f"expected {q + r * q * q} numbers after the header, got {len(nums)}")
    bw = tuple(nums[:q])
    rest = nums[q:]
    planes = tuple(
        tuple(tuple(rest[i * q * q + a * q + b] for b in range(q)) for a in range(q))
        for i in range(r)
    )
    associated = q > 1 and all(sum(p[a][a] for p in planes) == 0 for a in range(q))
    return StepColoringGraphon(r, q, bw, planes, associated)


def read_graphon(path: str) -> StepColoringGraphon:
    with open(path) as fh:
        return parse_graphon_text(fh.read())


def write_graphon(w: StepColoringGraphon, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(format_graphon_text(w))
