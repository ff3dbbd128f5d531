"""Exact-arithmetic laboratory for parameterized counting: counting oracles
(k-matchings, k-trees, k-forests, weighted apex trees, forest polynomials),
oracle-reduction pipelines, and linear matroid machinery over GF(2^b)."""

from .counters import (
    BivarApexCoeffs,
    bivariate_apex_coeffs,
    coefficient_poly_Ck,
    count_k_forests,
    count_k_matchings,
    count_k_trees,
    forest_polynomial,
    weighted_tree_sum,
)
from .errors import (
    CapExceededError,
    NonIntegralResultError,
    OracleInconsistencyError,
    SingularMatrixError,
)
from .gf2 import FFMatrix, FieldSpec, find_irreducible, format_matrix, parse_matrix
from .graphs import (
    ApexWeightedGraph,
    GraphFormatError,
    Multigraph,
    add_apex,
    build_G_pow_z,
    build_G_xz,
    contract_edge,
    delete_edges,
    delete_vertex,
    format_graph,
    parse_graph,
    subset_is_acyclic,
    subset_is_tree,
    thicken,
)
from .intpoly import (
    IntPoly,
    binomial,
    divide_by_power,
    evaluate,
    interpolate,
    reconstruct_from_prefix,
    shift_sub,
    solve_exact,
    unshift_sub,
)
from .matroid import (
    FptCount,
    LinearMatroid,
    TruncationRankError,
    count_bases,
    count_bases_brute,
    count_bases_fpt,
    count_bases_fpt_detailed,
    count_json,
    dualize,
    enumerate_bases,
    format_matroid,
    from_incidence,
    normalize,
    nullity,
    parse_matroid,
    rank,
    truncate,
    verify_truncation,
)
from .pipelines import (
    OracleCall,
    PipelineTrace,
    forests_via_bases,
    matchings_via_forest_prefix,
    matchings_via_wtrees,
    wtrees_via_ktrees,
)
from .corpus import connected_graphs

__version__ = "0.1.0"
