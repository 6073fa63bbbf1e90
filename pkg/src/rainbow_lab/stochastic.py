"""Random colorings drawn from step graphons, Monte Carlo density estimates
and hill-climbing search for seed colorings.

All randomness goes through ``numpy.random.Generator`` backed by PCG64, so a
given integer seed reproduces the same samples and trajectories on every
platform.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .coloring import EdgeColoring, RainbowCount, blowup_threshold, copy_edge_indices, count_rainbow
from .errors import CapExceeded, InvalidInput
from .graphon import StepColoringGraphon, rainbow_density
from .graphs import Graph, copy_count, edge_index

SeedLike = Union[int, np.random.Generator, None]

SAMPLE_CAP = 10**8


def _rng(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def sample_coloring(w: StepColoringGraphon, n: int, rng_seed: SeedLike = None,
                    return_blocks: bool = False):
    """Draw a coloring of K_n from ``w``.

    Each vertex picks a block with probability equal to its measure, then each
    edge independently picks color i with probability ``values[i][a][b]``.
    Cells whose color values are all zero (the diagonal of an associated
    graphon) fall back to color 0.
    """
    if n < 2:
        raise InvalidInput("need n >= 2")
    rng = _rng(rng_seed)
    probs = np.array([float(x) for x in w.block_weights])
    blocks = rng.choice(w.q, size=n, p=probs / probs.sum())
    vals = np.array([[[float(p[a][b]) for p in w.values] for b in range(w.q)] for a in range(w.q)])
    cum = np.cumsum(vals, axis=2)
    a, b = np.triu_indices(n, 1)
    u = rng.random(a.shape[0])
    cells = cum[blocks[a], blocks[b]]
    colors = np.minimum((u[:, None] >= cells).sum(axis=1), w.r - 1)
    colors[cells[:, -1] == 0] = 0
    c = EdgeColoring(n, w.r, colors)
    return (c, blocks) if return_blocks else c


@dataclass(frozen=True)
class SampleReport:
    n: int
    trials: int
    colorings: int
    hits: int
    empirical_mean: Fraction
    exact_target: Fraction
    standard_error_bound: Fraction
    bias_allowance: Fraction

    def deviation(self) -> Fraction:
        return abs(self.empirical_mean - self.exact_target)

    def consistent(self, z: float = 3) -> bool:
        """|mean - target| <= z * SE + bias allowance."""
        return self.deviation() <= Fraction(z) * self.standard_error_bound + self.bias_allowance


def _sample_injective(rng: np.random.Generator, n: int, k: int, size: int) -> np.ndarray:
    out = rng.integers(0, n, size=(size, k))
    while True:
        srt = np.sort(out, axis=1)
        bad = (np.diff(srt, axis=1) == 0).any(axis=1)
        if not bad.any():
            return out
        out[bad] = rng.integers(0, n, size=(int(bad.sum()), k))


def estimate_density(h: Graph, w: StepColoringGraphon, n: int, trials: int,
                     rng_seed: SeedLike = None, colorings: Optional[int] = None,
                     sample_cap: int = SAMPLE_CAP) -> SampleReport:
    """Fraction of random copies of ``h`` that are rainbow in sampled colorings.

    ``trials`` copy samples are spread evenly over ``colorings`` independent
    colorings of K_n drawn from ``w``.  The standard error is the larger of the
    between-coloring (cluster) estimate and the independent-Bernoulli one.
    The exact target is the rainbow density of ``h`` in ``w``; the bias
    allowance e(h) v(h) / n covers finite-n effects such as diagonal cells.
    """
    if trials < 1:
        raise InvalidInput("trials must be positive")
    if n < h.n_vertices:
        raise InvalidInput("n must be at least v(h)")
    if colorings is None:
        colorings = max(1, min(trials, 100))
    colorings = min(colorings, trials)
    if colorings * n * (n - 1) // 2 + trials * h.e > sample_cap:
        raise CapExceeded("sampling workload exceeds cap")
    rng = _rng(rng_seed)
    target = rainbow_density(h, w).value
    per = [trials // colorings + (1 if i < trials % colorings else 0) for i in range(colorings)]
    us = np.array([u for u, _ in h.edges])
    vs = np.array([v for _, v in h.edges])
    hits_each = []
    for size in per:
        c = sample_coloring(w, n, rng)
        verts = _sample_injective(rng, n, h.n_vertices, size)
        idx = edge_index(n, verts[:, us], verts[:, vs])
        cols = np.sort(c.colors[idx], axis=1)
        rainbow = (np.diff(cols, axis=1) != 0).all(axis=1) if h.e > 1 else np.ones(size, bool)
        hits_each.append(int(rainbow.sum()))
    hits = sum(hits_each)
    p = hits / trials
    se = math.sqrt(p * (1 - p) / trials)
    if colorings > 1:
        means = np.array(hits_each) / np.array(per)
        se = max(se, float(np.std(means, ddof=1)) / math.sqrt(colorings))
    return SampleReport(
        n=n,
        trials=trials,
        colorings=colorings,
        hits=hits,
        empirical_mean=Fraction(hits, trials),
        exact_target=target,
        standard_error_bound=Fraction(se).limit_denominator(10**12),
        bias_allowance=Fraction(h.e * h.n_vertices, n),
    )


# ---------------------------------------------------------------------------
# local search


@dataclass(frozen=True)
class SearchConfig:
    m: int
    r: int
    pattern: Graph
    max_steps: int = 20000
    restarts: int = 8
    seed: int = 0
    plateau_cap: int = 50
    workers: int = 1

    def __post_init__(self):
        if self.m < self.pattern.n_vertices:
            raise InvalidInput("m must be at least v(pattern)")
        if self.r < 1 or self.max_steps < 0 or self.restarts < 1:
            raise InvalidInput("need r >= 1, max_steps >= 0, restarts >= 1")


@dataclass(frozen=True)
class SearchResult:
    coloring: EdgeColoring
    count: RainbowCount
    threshold: Fraction
    restart: int

    @property
    def beats_threshold(self) -> bool:
        return self.count.copies > self.threshold


def _climb(copies: list[tuple[int, ...]], by_edge: list[list[int]], n_edges: int, cfg: SearchConfig,
           seed: np.random.SeedSequence) -> tuple[int, list[int]]:
    rng = np.random.Generator(np.random.PCG64(seed))
    r, k = cfg.r, cfg.pattern.e
    colors = rng.integers(0, r, size=n_edges).tolist()

    def rainbow(ci):
        return len({colors[j] for j in copies[ci]}) == k

    status = [rainbow(ci) for ci in range(len(copies))]
    score = sum(status)
    best, best_colors = score, list(colors)
    if r < 2 or not copies:
        return best, best_colors
    edges = rng.integers(0, n_edges, size=cfg.max_steps).tolist()
    shifts = rng.integers(1, r, size=cfg.max_steps).tolist()
    plateau = 0
    for e, shift in zip(edges, shifts):
        old = colors[e]
        colors[e] = (old + shift) % r
        touched = by_edge[e]
        new_status = [rainbow(ci) for ci in touched]
        delta = sum(new_status) - sum(status[ci] for ci in touched)
        if delta > 0 or (delta == 0 and plateau < cfg.plateau_cap):
            plateau = 0 if delta > 0 else plateau + 1
            for ci, st in zip(touched, new_status):
                status[ci] = st
            score += delta
            if score > best:
                best, best_colors = score, list(colors)
                if best == len(copies):
                    break
        else:
            colors[e] = old
    return best, best_colors


def local_search(cfg: SearchConfig) -> SearchResult:
    """Hill climbing with restarts over single-edge recolorings.

    A move recolors one uniformly chosen edge to a uniformly chosen different
    color and is kept when the rainbow count does not drop; at most
    ``plateau_cap`` consecutive sideways moves are kept before only strict
    improvements are accepted again.  Restart ``i`` uses the i-th child of
    ``SeedSequence(cfg.seed)``.
    """
    m, h = cfg.m, cfg.pattern
    n_edges = m * (m - 1) // 2
    chunks = list(copy_edge_indices(h, m))
    copies = [tuple(row) for chunk in chunks for row in chunk.tolist()]
    by_edge: list[list[int]] = [[] for _ in range(n_edges)]
    for ci, cp in enumerate(copies):
        for j in cp:
            by_edge[j].append(ci)
    seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.restarts)
    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            runs = list(pool.map(lambda s: _climb(copies, by_edge, n_edges, cfg, s), seeds))
    else:
        runs = [_climb(copies, by_edge, n_edges, cfg, s) for s in seeds]
    best_i = max(range(len(runs)), key=lambda i: (runs[i][0], -i))
    score, colors = runs[best_i]
    coloring = EdgeColoring(m, cfg.r, colors)
    verified = count_rainbow(h, coloring)
    if verified.copies != score:
        raise AssertionError(f"search reported {score} rainbow copies, recount gives {verified.copies}")
    if verified.total != copy_count(h, m):
        raise AssertionError("copy total mismatch")
    return SearchResult(coloring, verified, blowup_threshold(h, cfg.r, m), best_i)
