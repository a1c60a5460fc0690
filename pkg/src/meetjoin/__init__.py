"""Exact meet and join matrices with one adjusting function per row.

Builds the matrices f_i(x_i meet x_j) and f_i(x_i join x_j) over finite
posets and the divisor lattice, factorizes them through closure sets,
and evaluates the closed forms for determinant, rank bounds, and inverse
of closed sets, each cross-checkable against elimination oracles.
"""

from .errors import (
    AdmissibilityError,
    CycleError,
    DimensionError,
    DomainError,
    DuplicateCoverError,
    MeetJoinError,
    MissingValueError,
    NoJoinError,
    NoMeetError,
    NotClosedError,
    NotSortedError,
    OracleMismatchError,
    ParseError,
    SingularError,
    SingularPsiError,
    StructureError,
    UnknownElementError,
)
from .matrix import Matrix, det_oracle, inverse_oracle, rank_oracle
from .posets import (
    JOIN,
    MEET,
    ClosureSet,
    DivisorLattice,
    FinitePoset,
    OrderBackend,
    Subset,
    build_poset,
    closed_hull,
    closure_set,
    incidence_matrix,
    is_closed,
    linear_extension,
    mobius_matrix,
    zeta_matrix,
)
from .rowadjusted import (
    Factorization,
    FunctionFamily,
    PsiTable,
    RankReport,
    ThetaTable,
    build_matrix,
    factorize,
    ordinary_rank,
    psi_from_matrix,
    psi_table,
    rank_report,
    theorem_det,
    theorem_inverse,
    theta_table,
)
from .scalar import ONE, ZERO, Scalar, as_scalar

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityError",
    "ClosureSet",
    "CycleError",
    "DimensionError",
    "DivisorLattice",
    "DomainError",
    "DuplicateCoverError",
    "Factorization",
    "FinitePoset",
    "FunctionFamily",
    "JOIN",
    "MEET",
    "Matrix",
    "MeetJoinError",
    "MissingValueError",
    "NoJoinError",
    "NoMeetError",
    "NotClosedError",
    "NotSortedError",
    "ONE",
    "OracleMismatchError",
    "OrderBackend",
    "ParseError",
    "PsiTable",
    "RankReport",
    "Scalar",
    "SingularError",
    "SingularPsiError",
    "StructureError",
    "Subset",
    "ThetaTable",
    "UnknownElementError",
    "ZERO",
    "as_scalar",
    "build_matrix",
    "build_poset",
    "closed_hull",
    "closure_set",
    "det_oracle",
    "factorize",
    "incidence_matrix",
    "inverse_oracle",
    "is_closed",
    "linear_extension",
    "mobius_matrix",
    "ordinary_rank",
    "psi_from_matrix",
    "psi_table",
    "rank_oracle",
    "rank_report",
    "theorem_det",
    "theorem_inverse",
    "theta_table",
    "zeta_matrix",
]
