"""Exact Grassmann/Berezin calculus and path-cycle identities on weighted digraphs."""

from .arith import (
    RationalMatrix,
    format_rational,
    mat_det,
    mat_inverse,
    parse_rational,
    pfaffian,
    pfaffian_combinatorial,
    pfaffian_elimination,
    submatrix,
)
from .digraph import (
    Digraph,
    adjacency_matrix,
    b_matrix,
    enumerate_cycle_collections,
    enumerate_flows,
    enumerate_flows_free,
    enumerate_flows_general,
    enumerate_flows_mixed,
    enumerate_simple_paths,
    flow_sum,
    path_matrix,
    q_matrix,
    rpq_matrices,
)
from .grassmann import (
    GaussianSpec,
    Multivector,
    berezin_integral,
    det_via_integral,
    gaussian_moment,
    gaussian_moment_pf,
    mv_exp,
    mv_mul,
    pfaffian_via_integral,
)
from .identities import (
    IdentityReport,
    check_corollary,
    check_general,
    check_lgv,
    check_stembridge_free,
    check_stembridge_mixed,
    crossing_sum,
    verify_paths_lemma,
)

__version__ = "0.1.0"
