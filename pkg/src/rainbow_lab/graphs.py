"""Pattern graphs and the small exact graph computations built on them.

Everything here is aimed at tiny pattern graphs (a handful of vertices):
girth, automorphisms by backtracking, enumeration of unlabeled copies of a
pattern inside K_n, cycle subgraphs and even-degree edge subsets.
"""

from __future__ import annotations

import os
import re
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from math import perm
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .errors import CapExceeded, InvalidInput

Edge = tuple[int, int]

AUTOMORPHISM_CAP = 10
# rows materialised at once by the vectorised copy enumerator
CHUNK_ROWS = 1 << 21


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph on vertices ``0..n_vertices-1``.

    Edges are stored as ``(u, v)`` with ``u < v`` in the order given.
    """

    n_vertices: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.n_vertices < 0:
            raise InvalidInput("n_vertices must be non-negative")
        norm = []
        seen = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise InvalidInput(f"self-loop at vertex {u}")
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise InvalidInput(f"edge ({u}, {v}) out of range")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise InvalidInput(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def v(self) -> int:
        return self.n_vertices

    @property
    def e(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n_vertices
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def neighbours(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n_vertices)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    @classmethod
    def cycle(cls, s: int) -> "Graph":
        if s < 3:
            raise InvalidInput("a cycle needs at least 3 vertices")
        return cls(s, tuple((i, (i + 1) % s) for i in range(s)))

    @classmethod
    def complete(cls, s: int) -> "Graph":
        return cls(s, tuple(combinations(range(s), 2)))

    @classmethod
    def path(cls, s: int) -> "Graph":
        """Path with ``s`` edges (``s + 1`` vertices)."""
        if s < 0:
            raise InvalidInput("path length must be non-negative")
        return cls(s + 1, tuple((i, i + 1) for i in range(s)))

    def with_pendant(self, at: int = 0) -> "Graph":
        """Return a copy with one new leaf attached to vertex ``at``."""
        return Graph(self.n_vertices + 1, self.edges + ((at, self.n_vertices),))

    def __str__(self):
        return f"Graph(v={self.v}, e={self.e}, edges={list(self.edges)})"


# ---------------------------------------------------------------------------
# parsing


_BUILTIN = re.compile(r"^([CKP])(\d+)$")


def named_graph(name: str) -> Graph:
    """Build ``C<s>``, ``K<s>`` or ``P<s>`` (path with s edges)."""
    m = _BUILTIN.match(name.strip())
    if not m:
        raise InvalidInput(f"unknown graph name {name!r}")
    kind, s = m.group(1), int(m.group(2))
    return {"C": Graph.cycle, "K": Graph.complete, "P": Graph.path}[kind](s)


def parse_graph_text(text: str) -> Graph:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise InvalidInput("empty graph file")
    try:
        n, m = int(lines[0][0]), int(lines[0][1])
        edges = [(int(a), int(b)) for a, b in lines[1:]]
    except (ValueError, IndexError) as exc:
        raise InvalidInput(f"malformed graph file: {exc}") from None
    if len(edges) != m:
        raise InvalidInput(f"header announces {m} edges, found {len(edges)}")
    return Graph(n, tuple(edges))


def format_graph_text(g: Graph) -> str:
    out = [f"{g.n_vertices} {g.e}"]
    out += [f"{u} {v}" for u, v in g.edges]
    return "\n".join(out) + "\n"


def load_graph(source: str) -> Graph:
    """Resolve a built-in name or read a graph file."""
    if _BUILTIN.match(source.strip()):
        return named_graph(source)
    if not os.path.exists(source):
        raise InvalidInput(f"no such graph file or built-in: {source!r}")
    with open(source) as fh:
        return parse_graph_text(fh.read())


# ---------------------------------------------------------------------------
# girth / automorphisms


def girth(g: Graph) -> Optional[int]:
    """Length of a shortest cycle, or ``None`` for a forest.

    BFS from every vertex; a non-tree edge (x, y) met from root gives a closed
    walk of length dist[x] + dist[y] + 1 and the minimum over all roots is the
    girth.
    """
    adj = g.neighbours()
    best = None
    for root in range(g.n_vertices):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    length = dist[x] + dist[y] + 1
                    if best is None or length < best:
                        best = length
    return best


def automorphisms(g: Graph, cap: int = AUTOMORPHISM_CAP) -> list[tuple[int, ...]]:
    """All vertex permutations preserving the edge set, by backtracking.

    Candidates for each vertex are restricted to vertices of equal degree and
    adjacency to already-placed vertices is checked incrementally.
    """
    if g.n_vertices > cap:
        raise CapExceeded(f"automorphism search limited to {cap} vertices, got {g.n_vertices}")
    n = g.n_vertices
    deg = g.degrees()
    adj = g.neighbours()
    image = [-1] * n
    used = [False] * n
    found: list[tuple[int, ...]] = []

    def extend(i):
        if i == n:
            found.append(tuple(image))
            return
        for t in range(n):
            if used[t] or deg[t] != deg[i]:
                continue
            if any((j in adj[i]) != (image[j] in adj[t]) for j in range(i)):
                continue
            image[i] = t
            used[t] = True
            extend(i + 1)
            used[t] = False
        image[i] = -1

    extend(0)
    return found


def automorphism_count(g: Graph, cap: int = AUTOMORPHISM_CAP) -> int:
    return len(automorphisms(g, cap))


# ---------------------------------------------------------------------------
# copies of h in K_n


def copy_count(h: Graph, n: int) -> int:
    """Number of unlabeled copies of ``h`` in ``K_n``: (n)_v / |Aut(h)|."""
    return perm(n, h.n_vertices) // automorphism_count(h)


def _stabilizer_constraints(h: Graph) -> list[list[int]]:
    """For each pattern vertex t, the earlier vertices j whose image must be below t's.

    With G_j the automorphisms fixing 0..j-1 pointwise and O_j the orbit of j
    under G_j, an injective map phi is the lexicographic minimum of its
    Aut(h)-orbit iff phi[j] < phi[t] for every t in O_j other than j.
    """
    auts = automorphisms(h)
    k = h.n_vertices
    below: list[list[int]] = [[] for _ in range(k)]
    for j in range(k):
        orbit = {a[j] for a in auts if all(a[i] == i for i in range(j))}
        for t in orbit:
            if t != j:
                below[t].append(j)
    return below


def _canonical_rows(n: int, below: list[list[int]], prefix: Sequence[int]) -> Iterator[np.ndarray]:
    """Yield canonical injective images extending ``prefix``, in lexicographic order."""
    k = len(below)
    if len(prefix) < k and perm(n - len(prefix), k - len(prefix)) > CHUNK_ROWS:
        t = len(prefix)
        floor = max((prefix[j] for j in below[t]), default=-1)
        for x in range(floor + 1, n):
            if x not in prefix:
                yield from _canonical_rows(n, below, list(prefix) + [x])
        return
    arr = np.array([list(prefix)], dtype=np.int64).reshape(1, len(prefix))
    values = np.arange(n, dtype=np.int64)
    for t in range(len(prefix), k):
        rows = np.repeat(arr, n, axis=0)
        col = np.tile(values, arr.shape[0])
        keep = np.ones(len(col), dtype=bool)
        for j in range(t):
            keep &= rows[:, j] != col
        for j in below[t]:
            keep &= col > rows[:, j]
        arr = np.column_stack([rows[keep], col[keep]])
        if arr.shape[0] == 0:
            return
    yield arr


def copy_image_chunks(h: Graph, n: int, first: Optional[int] = None) -> Iterator[np.ndarray]:
    """Vectorised copy enumeration.

    Yields integer arrays of shape (N, v(h)); each row is the canonical vertex
    image of one copy, i.e. the lexicographically least map in its orbit under
    Aut(h).  ``first`` restricts to copies whose canonical image sends pattern
    vertex 0 to ``first``; the partitions over ``first`` are disjoint and
    exhaustive.
    """
    k = h.n_vertices
    if k > n or k == 0:
        return
    below = _stabilizer_constraints(h)
    starts = range(n) if first is None else [first]
    if first is None and perm(n, k) <= CHUNK_ROWS:
        yield from _canonical_rows(n, below, [])
        return
    for a in starts:
        yield from _canonical_rows(n, below, [a])


def enumerate_copies(h: Graph, n: int, first: Optional[int] = None) -> Iterator[tuple[Edge, ...]]:
    """Yield every copy of ``h`` in ``K_n`` exactly once.

    A copy is reported as the tuple of its K_n edges, listed in the order of
    ``h.edges`` under the canonical vertex image, each as ``(a, b)`` with a < b.
    """
    for chunk in copy_image_chunks(h, n, first):
        for row in chunk.tolist():
            yield tuple((min(row[u], row[v]), max(row[u], row[v])) for u, v in h.edges)


def edge_index(n: int, a, b):
    """Index of the pair {a, b} in the row-major list of K_n edges (works on arrays)."""
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    return lo * n - lo * (lo + 1) // 2 + (hi - lo - 1)


# ---------------------------------------------------------------------------
# subgraphs


def cycle_subgraphs(h: Graph, s: int) -> list[frozenset[Edge]]:
    """All s-edge subsets of ``h`` forming a cycle C_s."""
    if s < 3:
        raise InvalidInput("cycles have length at least 3")
    out = []
    for subset in combinations(h.edges, s):
        deg: dict[int, int] = {}
        for u, v in subset:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        if len(deg) != s or any(d != 2 for d in deg.values()):
            continue
        if _connected(subset):
            out.append(frozenset(subset))
    return out


def _connected(edges: Iterable[Edge]) -> bool:
    edges = list(edges)
    if not edges:
        return True
    adj: dict[int, list[int]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    start = edges[0][0]
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(adj)


def is_even_graph(h: Graph, edge_subset: Iterable[Edge]) -> bool:
    """True iff every vertex has even degree inside ``edge_subset``."""
    valid = set(h.edges)
    parity: dict[int, int] = {}
    for u, v in edge_subset:
        e = (min(u, v), max(u, v))
        if e not in valid:
            raise InvalidInput(f"edge {e} is not an edge of the pattern")
        parity[u] = parity.get(u, 0) ^ 1
        parity[v] = parity.get(v, 0) ^ 1
    return not any(parity.values())


def is_forest(g: Graph) -> bool:
    parent = list(range(g.n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


__all__ = [
    "Graph",
    "named_graph",
    "parse_graph_text",
    "format_graph_text",
    "load_graph",
    "girth",
    "automorphisms",
    "automorphism_count",
    "copy_count",
    "copy_image_chunks",
    "enumerate_copies",
    "edge_index",
    "cycle_subgraphs",
    "is_even_graph",
    "is_forest",
]
