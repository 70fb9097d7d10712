"""Concentration-weighted simplicial complexes.

Vertices carry positive rational concentrations that propagate exactly
to every simplex through fractional contribution schemes; higher-order
simplices are admitted by a threshold rule on aggregated boundary
weight; facet-mediated adjacency then supports degree, closeness and
harmonic centralities with a one-parameter structural/weighted
interpolation.
"""

from .centrality import (
    AdjacencyView,
    CentralityReport,
    CentralityRow,
    DistanceTable,
    adjacency_matrices,
    build_report,
    closeness,
    combined_degree,
    connected_components,
    facet_adjacent,
    farness,
    harmonic,
    shortest_distances,
    simplicial_degree,
    step_cost,
    strength,
    weighted_degree,
)
from .complexes import (
    ClosureReport,
    Graph,
    Simplex,
    SimplicialComplex,
    boundary,
    clique_complex,
    make_simplex,
    simplex_dim,
    validate_closure,
)
from .concentration import (
    ConcentrationAssignment,
    ConservationReport,
    InternalStructure,
    LevelFractions,
    SchemeReport,
    compose_schemes,
    concentration_from_internal,
    contribution_number,
    extend_full,
    extend_one_level,
    table_fractions,
    table_scheme,
    uniform_fractions,
    validate_cumulative_decomposition,
    validate_facet_decomposition,
    validate_global_conservation,
    validate_level_conservation,
    validate_scheme,
)
from .inference import (
    Candidate,
    DimensionTrace,
    InferenceConfig,
    InferenceResult,
    InferenceTrace,
    admit,
    aggregated_boundary_weight,
    enumerate_candidates,
    infer_metaplex,
    threshold,
)
from .oracles import (
    RandomCMSpec,
    generate_random_cm,
    oracle_extend,
    oracle_facets,
    oracle_shortest,
)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
