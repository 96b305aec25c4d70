"""Exact max-plus matrix computation: spectral data, tropical ranks and ultimate rank."""

from .core import (
    NEG_INF,
    ProjectiveForm,
    TropMatrix,
    TropVector,
    conjugate,
    diag,
    equivalent,
    mat_vec,
    power,
    projective_form,
    scalar,
    scalar_mul,
    trop_add,
    trop_mul,
)
from .digraph import Digraph, SccDecomposition, cyclicity_graph, cyclicity_scc, graph_of_matrix, scc
from .errors import BudgetExceeded, DimensionError, DomainError, MaxPlusError, ParseError
from .ranks import (
    PermanentCertificate,
    RankReport,
    column_rank,
    is_nonsingular,
    permanent,
    rank_report,
    row_rank,
    symmetrized_rank_bruteforce,
    tropical_rank_bruteforce,
)
from .semigroup import (
    FundamentalCellQuery,
    GeneratorSet,
    SemigroupDecision,
    decide_max_ultimate_rank,
    decide_with_oracle,
    fundamental_cell_contains,
    is_strict_visualization,
    is_visualization,
    semigroup_oracle,
    strict_visualization,
    witness_check,
    word_product,
)
from .spectral import (
    EigenBasis,
    OrbitReport,
    SpectralData,
    critical_graph,
    eigen_basis,
    is_eigenvector,
    kleene_star,
    max_cycle_mean,
    projective_power_orbit,
)
from .ultimate import UltimateRankResult, has_max_ultimate_rank, ultimate_rank, ultimate_rank_oracle

__version__ = "0.1.0"
