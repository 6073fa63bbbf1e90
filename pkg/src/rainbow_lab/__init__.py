"""Exact tools for rainbow copies of small graphs in edge-colored complete graphs."""

from .blowup import BlowupSpec, blowup_coloring, blowup_lower_bound, fixture, fixtures, verify_blowup
from .coloring import (
    EdgeColoring,
    RainbowCount,
    blowup_threshold,
    count_rainbow,
    empirical_uniform_mean,
    expected_uniform_count,
    minimal_beating_count,
)
from .errors import (
    CapExceeded,
    ComplexityGuard,
    EpsilonTooLarge,
    InvalidInput,
    NoCycle,
    NoPositiveK,
    NotFound,
    RainbowLabError,
)
from .graphon import (
    DensityResult,
    StepColoringGraphon,
    associated_graphon,
    baseline_density,
    rainbow_density,
    rainbow_hom_count,
    uniform_graphon,
)
from .graphs import (
    Graph,
    automorphism_count,
    cycle_subgraphs,
    enumerate_copies,
    girth,
    is_even_graph,
    load_graph,
    named_graph,
)
from .witness import (
    Sigma,
    WitnessCertificate,
    build_witness_graphon,
    capital_F,
    certify_uncommon,
    expansion_polynomial,
    q_of_cycle,
    q_of_even_subgraph,
    select_epsilon,
    select_k,
)

__version__ = "0.1.0"
