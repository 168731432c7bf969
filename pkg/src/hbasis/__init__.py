"""Numerical H-bases of polynomial ideals via SVD syzygy computation."""

from .driver import (
    BoundTracker,
    HBasisConfig,
    HBasisResult,
    NormalizeMode,
    Status,
    compute_hbasis,
    hilbert_function_numeric,
    leading_monomials_at_degree,
    normalize_system,
    update_bound,
    verify_hbasis,
)
from .linalg import (
    RankPolicy,
    RankStrategy,
    SvdResult,
    default_tolerance,
    echelon_pivot_columns,
    nullspace_basis,
    numerical_rank,
    svd,
)
from .macaulay import (
    BlockLayout,
    MacaulayMatrix,
    ShiftMatrix,
    apply_extension,
    build_macaulay,
    build_shift_family,
    column_label,
)
from .poly import (
    HomogeneousForm,
    MultiIndex,
    Polynomial,
    PolynomialSyntaxError,
    PolynomialSystem,
    dim_homogeneous,
    format_polynomial,
    graded_lex_compare,
    homogeneous_components,
    leading_form,
    monomial_rank,
    monomial_unrank,
    monomials_of_degree,
    multiply_monomial,
    parse_polynomial,
    total_degree,
)
from .reduction import (
    HomogeneousDecomposition,
    ReductionResult,
    Reducer,
    ZeroTestMode,
    decompose_homogeneous,
    is_numerically_zero,
    reduce_polynomial,
)
from .syzygy import (
    SyzygyBasis,
    UpdateDiagnostics,
    initial_syzygies,
    syzygy_to_polynomial,
    update_syzygies,
)

__version__ = "0.1.0"

__all__ = [
    "BlockLayout",
    "BoundTracker",
    "HBasisConfig",
    "HBasisResult",
    "HomogeneousDecomposition",
    "HomogeneousForm",
    "MacaulayMatrix",
    "MultiIndex",
    "NormalizeMode",
    "Polynomial",
    "PolynomialSyntaxError",
    "PolynomialSystem",
    "RankPolicy",
    "RankStrategy",
    "ReductionResult",
    "Reducer",
    "ShiftMatrix",
    "Status",
    "SvdResult",
    "SyzygyBasis",
    "UpdateDiagnostics",
    "ZeroTestMode",
    "apply_extension",
    "build_macaulay",
    "build_shift_family",
    "column_label",
    "compute_hbasis",
    "decompose_homogeneous",
    "default_tolerance",
    "dim_homogeneous",
    "echelon_pivot_columns",
    "format_polynomial",
    "graded_lex_compare",
    "hilbert_function_numeric",
    "homogeneous_components",
    "initial_syzygies",
    "is_numerically_zero",
    "leading_form",
    "leading_monomials_at_degree",
    "monomial_rank",
    "monomial_unrank",
    "monomials_of_degree",
    "multiply_monomial",
    "normalize_system",
    "nullspace_basis",
    "numerical_rank",
    "parse_polynomial",
    "reduce_polynomial",
    "svd",
    "syzygy_to_polynomial",
    "total_degree",
    "update_bound",
    "update_syzygies",
    "verify_hbasis",
]
