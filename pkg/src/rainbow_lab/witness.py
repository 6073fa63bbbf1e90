"""Perturbation witnesses for rainbow uncommonness.

The witness graphon perturbs the uniform r-coloring on a 2 x 2 block grid:
color i gets ``1/r + eps * sigma(i) * f`` where ``f`` is +1 on the two
diagonal blocks and -1 off them, and ``sigma`` is ``1/k`` on the first k
colors and ``-1/(r-k)`` on the rest.  Expanding the rainbow density in eps
gives a polynomial whose terms are indexed by edge subsets G of H; the f
integral of G is 1 when G is even (all degrees even) and 0 otherwise, so the
lowest surviving degree is the girth of H.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import comb, factorial, perm
from typing import Optional, Sequence

from .errors import ComplexityGuard, EpsilonTooLarge, InvalidInput, NoCycle, NoPositiveK, NotFound
from .graphon import DENSITY_BUDGET, StepColoringGraphon, baseline_density, rainbow_density
from .graphs import Edge, Graph, girth, is_even_graph

EPSILON_TRIALS = 65
SUBSET_CAP = 1 << 20
INJECTION_BUDGET = 10**7


@dataclass(frozen=True)
class Sigma:
    """Color weights: 1/k on colors [0, k), -1/(r-k) on [k, r)."""

    r: int
    k: int

    def __post_init__(self):
        if not 1 <= self.k <= self.r - 1:
            raise InvalidInput(f"split k={self.k} must lie in [1, {self.r - 1}]")

    def value(self, i: int) -> Fraction:
        return Fraction(1, self.k) if i < self.k else Fraction(-1, self.r - self.k)

    @property
    def values(self) -> list[Fraction]:
        return [self.value(i) for i in range(self.r)]


def capital_F(r: int, s: int, k: int) -> int:
    """Alternating binomial sum controlling the sign of the cycle term."""
    return sum(
        (-1) ** i * comb(k, i) * comb(r - k, s - i) * k ** (s - i) * (r - k) ** i
        for i in range(s + 1)
    )


def _injection_sigma_sum(sigma: Sequence[Fraction], d: int) -> Fraction:
    """Sum over injections of d labelled edges into the colors of prod sigma.

    Equals d! times the elementary symmetric polynomial e_d(sigma).
    """
    elem = [Fraction(1)] + [Fraction(0)] * d
    for x in sigma:
        for j in range(d, 0, -1):
            elem[j] += elem[j - 1] * x
    return factorial(d) * elem[d]


def q_of_cycle(r: int, s: int, k: int, eH: int) -> Fraction:
    """Weighted injection sum for an s-cycle inside a host with eH edges.

    Computed by literal summation over injections of the cycle edges, times
    the (r-s)_(eH-s) ways to color the remaining host edges.
    """
    if not r >= eH >= s >= 3:
        raise InvalidInput("need r >= eH >= s >= 3")
    sig = Sigma(r, k).values
    total = Fraction(0)
    for inj in permutations(range(r), s):
        term = Fraction(1)
        for c in inj:
            term *= sig[c]
        total += term
    return total * perm(r - s, eH - s)


def q_of_cycle_closed_form(r: int, s: int, k: int, eH: int) -> Fraction:
    """(-1)^s s! (r-s)_(eH-s) F(r, s, k) / (k^s (r-k)^s)."""
    return Fraction((-1) ** s * factorial(s) * perm(r - s, eH - s) * capital_F(r, s, k),
                    k**s * (r - k) ** s)


def q_of_even_subgraph(h: Graph, edge_subset: Sequence[Edge], r: int, k: int,
                       method: str = "symmetric", budget: int = INJECTION_BUDGET) -> Fraction:
    """Sum over injections E(h) -> [r] of the sigma product over ``edge_subset``.

    ``method="brute"`` enumerates injections of the subset literally (guarded
    by ``budget``); the default uses the elementary symmetric identity.
    """
    d = len(edge_subset)
    if d == 0:
        raise InvalidInput("edge subset must be nonempty")
    if r < h.e:
        raise InvalidInput("need r >= e(h)")
    sigma = Sigma(r, k)
    extend = perm(r - d, h.e - d)
    if method == "symmetric":
        return _injection_sigma_sum(sigma.values, d) * extend
    if method == "brute":
        if perm(r, d) > budget:
            raise ComplexityGuard(f"(r)_d = {perm(r, d)} exceeds budget {budget}")
        sig = sigma.values
        total = Fraction(0)
        for inj in permutations(range(r), d):
            term = Fraction(1)
            for c in inj:
                term *= sig[c]
            total += term
        return total * extend
    raise ValueError(f"unknown method {method!r}")


def select_k(r: int, s: int) -> int:
    """Split point in [1, r-1] maximising the directly summed cycle term."""
    if not r >= s >= 3:
        raise InvalidInput("need r >= s >= 3")
    scored = [(q_of_cycle(r, s, k, s), -k) for k in range(1, r)]
    best, neg_k = max(scored)
    if best <= 0:
        raise NoPositiveK(f"no k in [1, {r - 1}] gives a positive cycle term for r={r}, s={s}")
    return -neg_k


def epsilon_is_valid(r: int, k: int, epsilon: Fraction) -> bool:
    return epsilon >= 0 and epsilon * max(Fraction(1, k), Fraction(1, r - k)) <= Fraction(1, r)


def build_witness_graphon(r: int, k: int, epsilon) -> StepColoringGraphon:
    """Two-block perturbation of the uniform r-coloring graphon."""
    epsilon = Fraction(epsilon)
    sigma = Sigma(r, k)
    if not epsilon_is_valid(r, k, epsilon):
        raise EpsilonTooLarge(f"epsilon={epsilon} pushes a cell outside [0, 1] for r={r}, k={k}")
    base = Fraction(1, r)
    planes = []
    for i in range(r):
        on = base + epsilon * sigma.value(i)
        off = base - epsilon * sigma.value(i)
        planes.append(((on, off), (off, on)))
    return StepColoringGraphon(r, 2, (Fraction(1, 2), Fraction(1, 2)), tuple(planes))


@dataclass(frozen=True)
class ExpansionTerm:
    edges: tuple[Edge, ...]
    degree: int
    coefficient: Fraction

    @property
    def descriptor(self) -> str:
        verts = {x for e in self.edges for x in e}
        is_cycle = len(verts) == self.degree and all(
            sum(x in e for e in self.edges) == 2 for x in verts)
        kind = f"C{self.degree}" if is_cycle else f"even-{self.degree}"
        return kind + " " + " ".join(f"{a}-{b}" for a, b in self.edges)


def expansion_terms(h: Graph, r: int, k: int, cap: int = SUBSET_CAP) -> list[ExpansionTerm]:
    """Nonzero terms of the eps-expansion, one per nonempty even edge subset."""
    if 2**h.e > cap:
        raise ComplexityGuard(f"2^{h.e} edge subsets exceeds cap {cap}")
    sig_sums = {}
    terms = []
    for d in range(1, h.e + 1):
        for subset in combinations(h.edges, d):
            if not is_even_graph(h, subset):
                continue
            if d not in sig_sums:
                sig_sums[d] = q_of_even_subgraph(h, subset, r, k)
            coeff = Fraction(r) ** (d - h.e) * sig_sums[d]
            terms.append(ExpansionTerm(tuple(subset), d, coeff))
    return terms


def expansion_polynomial(h: Graph, r: int, k: int) -> list[tuple[int, Fraction]]:
    """Coefficients of eps^d, d = 1..e(h), of rainbow density minus baseline."""
    coeffs = {d: Fraction(0) for d in range(1, h.e + 1)}
    for t in expansion_terms(h, r, k):
        coeffs[t.degree] += t.coefficient
    return sorted(coeffs.items())


def evaluate_polynomial(coeffs: Sequence[tuple[int, Fraction]], x) -> Fraction:
    x = Fraction(x)
    return sum((c * x**d for d, c in coeffs), Fraction(0))


def _gap(h: Graph, r: int, k: int, epsilon: Fraction, budget: int) -> tuple[Fraction, Fraction]:
    w = build_witness_graphon(r, k, epsilon)
    dens = rainbow_density(h, w, budget=budget).value
    return dens - baseline_density(h, r), dens


def _check_pattern(h: Graph, r: int) -> int:
    s = girth(h)
    if s is None:
        raise NoCycle("pattern is a forest; no perturbation witness exists")
    if r < h.e:
        raise InvalidInput(f"need r >= e(h) = {h.e}, got r = {r}")
    return s


def select_epsilon(h: Graph, r: int, k: int, budget: int = DENSITY_BUDGET) -> Fraction:
    """Largest eps = 1/(r 2^j), j = 0..64, that is valid and gives a positive gap."""
    s = _check_pattern(h, r)
    if q_of_cycle(r, s, k, h.e) <= 0:
        raise NoPositiveK(f"cycle term is not positive at k={k}")
    for j in range(EPSILON_TRIALS):
        eps = Fraction(1, r * 2**j)
        if not epsilon_is_valid(r, k, eps):
            continue
        if _gap(h, r, k, eps, budget)[0] > 0:
            return eps
    raise NotFound(f"no epsilon in the ladder gives a positive gap for r={r}, k={k}")


@dataclass(frozen=True)
class WitnessCertificate:
    """Exact record that the witness graphon beats the uniform coloring."""

    h: Graph
    r: int
    s: int
    k: int
    epsilon: Fraction
    gap: Fraction
    density: Fraction
    baseline: Fraction
    terms: tuple[ExpansionTerm, ...] = field(repr=False)

    @property
    def coefficients(self) -> list[tuple[int, Fraction]]:
        coeffs = {d: Fraction(0) for d in range(1, self.h.e + 1)}
        for t in self.terms:
            coeffs[t.degree] += t.coefficient
        return sorted(coeffs.items())

    @property
    def lowest_degree(self) -> Optional[int]:
        nz = [d for d, c in self.coefficients if c != 0]
        return min(nz) if nz else None

    def verify(self) -> bool:
        """Re-check the stored numbers against each other (no density recomputation)."""
        return (
            self.gap > 0
            and self.density - self.baseline == self.gap
            and evaluate_polynomial(self.coefficients, self.epsilon) == self.gap
        )

    def to_dict(self) -> dict:
        return {
            "pattern": {"n_vertices": self.h.n_vertices, "edges": [list(e) for e in self.h.edges]},
            "r": self.r,
            "s": self.s,
            "k": self.k,
            "epsilon": str(self.epsilon),
            "gap": str(self.gap),
            "density": str(self.density),
            "baseline": str(self.baseline),
            "expansion": [
                {"subgraph": t.descriptor, "edges": [list(e) for e in t.edges],
                 "degree": t.degree, "coefficient": str(t.coefficient)}
                for t in self.terms
            ],
            "coefficients": {str(d): str(c) for d, c in self.coefficients},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "WitnessCertificate":
        h = Graph(data["pattern"]["n_vertices"], tuple(tuple(e) for e in data["pattern"]["edges"]))
        terms = tuple(
            ExpansionTerm(tuple(tuple(e) for e in t["edges"]), t["degree"], Fraction(t["coefficient"]))
            for t in data["expansion"]
        )
        return cls(h, data["r"], data["s"], data["k"], Fraction(data["epsilon"]), Fraction(data["gap"]),
                   Fraction(data["density"]), Fraction(data["baseline"]), terms)

    def format_text(self) -> str:
        lines = [
            f"pattern: v={self.h.n_vertices} e={self.h.e} edges={' '.join(f'{a}-{b}' for a, b in self.h.edges)}",
            f"r: {self.r}",
            f"girth s: {self.s}",
            f"k: {self.k}",
            f"epsilon: {self.epsilon}",
            f"density: {self.density}",
            f"baseline: {self.baseline}",
            f"gap: {self.gap}",
            "expansion (degree, coefficient):",
        ]
        lines += [f"  eps^{d}: {c}" for d, c in self.coefficients if c != 0]
        lines.append("terms:")
        lines += [f"  {t.descriptor}  deg={t.degree}  coeff={t.coefficient}" for t in self.terms]
        return "\n".join(lines)


def certify_uncommon(h: Graph, r: int, k: Optional[int] = None, epsilon=None,
                     budget: int = DENSITY_BUDGET) -> WitnessCertificate:
    """Build and cross-check a perturbation witness for (h, r)."""
    s = _check_pattern(h, r)
    if k is None:
        k = select_k(r, s)
    if epsilon is None:
        epsilon = select_epsilon(h, r, k, budget)
    epsilon = Fraction(epsilon)
    gap, dens = _gap(h, r, k, epsilon, budget)
    if gap <= 0:
        raise NotFound(f"gap {gap} is not positive at k={k}, epsilon={epsilon}")
    terms = tuple(expansion_terms(h, r, k))
    cert = WitnessCertificate(h, r, s, k, epsilon, gap, dens, baseline_density(h, r), terms)
    if evaluate_polynomial(cert.coefficients, epsilon) != gap:
        raise AssertionError("expansion polynomial disagrees with the direct density gap")
    return cert
