"""Row-adjusted meet and join matrices and their closed forms.

The matrix under study has entry (i, j) = f_i(x_i meet x_j), one function
per row (dually with joins). Everything here is driven by the recursion
tables Psi: for each row function, the unique values on the closure set
whose down-set sums (up-set sums in join mode) reconstruct the function.
They give the factorization

    matrix = (incidence . psi_grid) @ incidence^T   (entrywise product)

from which determinant, rank bounds, and the inverse of closed sets
follow without elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import (
    DimensionError,
    MissingValueError,
    NotClosedError,
    OracleMismatchError,
    SingularPsiError,
)
from .matrix import Matrix
from .posets import (
    JOIN,
    MEET,
    ClosureSet,
    Subset,
    check_mode,
    closure_set,
    incidence_matrix,
    is_closed,
    mobius_matrix,
)
from .scalar import ONE, ZERO, Scalar, as_scalar


class FunctionFamily:
    """One value table per row; every lookup outside a table is an error."""

    def __init__(self, tables: Sequence[Mapping]):
        if not tables:
            raise DimensionError("function family needs at least one row")
        self._tables = tuple(
            {element: as_scalar(v) for element, v in table.items()} for table in tables
        )

    @classmethod
    def from_callable(cls, n: int, fn, elements: Sequence) -> "FunctionFamily":
        """Tabulate fn(row_index, element) for rows 1..n over the elements."""
        return cls([{e: fn(i, e) for e in elements} for i in range(n)])

    @property
    def n(self) -> int:
        return len(self._tables)

    def value(self, row: int, element) -> Scalar:
        try:
            return self._tables[row][element]
        except KeyError:
            raise MissingValueError(
                f"f{row + 1} has no value at {element!r}"
            ) from None

    def has_value(self, row: int, element) -> bool:
        return element in self._tables[row]

    def table(self, row: int) -> dict:
        return dict(self._tables[row])

    def __repr__(self):
        return f"FunctionFamily({self.n} rows)"


@dataclass(frozen=True)
class PsiTable:
    """Recursion values for every row over a closure set, as an n x m grid."""

    mode: str
    closure: ClosureSet
    grid: Matrix

    def diagonal(self, subset: Subset) -> list[Scalar]:
        """Values at the subset's own members, in row order."""
        return [
            self.grid[i, self.closure.index(x)] for i, x in enumerate(subset.members)
        ]


@dataclass(frozen=True)
class Factorization:
    """The structure decomposition of a row-adjusted matrix.

    product = masked_psi @ incidence^T holds exactly, and product equals
    the directly built matrix; masked_psi is the entrywise product of
    incidence and psi_grid.
    """

    mode: str
    incidence: Matrix
    psi_grid: Matrix
    masked_psi: Matrix
    product: Matrix


def _resolve_closure(subset: Subset, mode: str, closure: ClosureSet | None) -> ClosureSet:
    if closure is None:
        return closure_set(subset, mode)
    if closure.mode != mode:
        raise ValueError(f"closure set has mode {closure.mode!r}, need {mode!r}")
    closure.validate_for(subset)
    return closure


def _require_family(subset: Subset, family: FunctionFamily):
    if family.n != subset.n:
        raise DimensionError(
            f"family has {family.n} rows but the subset has {subset.n} members"
        )


def psi_table(
    subset: Subset,
    family: FunctionFamily,
    mode: str = MEET,
    closure: ClosureSet | None = None,
    method: str = "recursion",
) -> PsiTable:
    """Tabulate the recursion values of every row function over the closure.

    Meet mode solves f_i(d_k) = sum of values over elements below d_k by a
    bottom-up pass; join mode is the top-down dual. `method="mobius"`
    computes the same grid as the Möbius-weighted sum instead; the two
    routes agree and that equality is tested.
    """
    check_mode(mode)
    _require_family(subset, family)
    closure = _resolve_closure(subset, mode, closure)
    if method == "recursion":
        grid = _psi_recursion(family, closure)
    elif method == "mobius":
        grid = _psi_mobius(family, closure)
    else:
        raise ValueError(f"unknown method {method!r}")
    return PsiTable(mode, closure, grid)


def _psi_recursion(family: FunctionFamily, closure: ClosureSet) -> Matrix:
    backend = closure.backend
    elems = closure.elements
    m = len(elems)
    below = [
        [v for v in range(k) if backend.leq(elems[v], elems[k])] for k in range(m)
    ]
    rows = []
    for i in range(family.n):
        values: list[Scalar] = [ZERO] * m
        if closure.mode == MEET:
            for k in range(m):
                total = family.value(i, elems[k])
                for v in below[k]:
                    total = total - values[v]
                values[k] = total
        else:
            for k in range(m - 1, -1, -1):
                total = family.value(i, elems[k])
                for v in range(k + 1, m):
                    if backend.leq(elems[k], elems[v]):
                        total = total - values[v]
                values[k] = total
        rows.append(values)
    return Matrix(rows)


def _psi_mobius(family: FunctionFamily, closure: ClosureSet) -> Matrix:
    values = Matrix(
        [
            [family.value(i, d) for d in closure.elements]
            for i in range(family.n)
        ]
    )
    mob = mobius_matrix(closure)
    if closure.mode == MEET:
        return values @ mob
    return values @ mob.transpose()


def build_matrix(
    subset: Subset,
    family: FunctionFamily,
    mode: str = MEET,
    column_adjusted: bool = False,
) -> Matrix:
    """The row-adjusted matrix itself: entry (i, j) = f_i(x_i meet/join x_j).

    With column_adjusted=True the transpose is returned, which is the
    column-adjusted matrix of the same data.
    """
    check_mode(mode)
    _require_family(subset, family)
    backend = subset.backend
    rows = []
    for i, xi in enumerate(subset.members):
        row = []
        for xj in subset.members:
            row.append(family.value(i, backend.bound(mode, xi, xj)))
        rows.append(row)
    result = Matrix(rows)
    return result.transpose() if column_adjusted else result


def factorize(
    subset: Subset,
    family: FunctionFamily,
    mode: str = MEET,
    closure: ClosureSet | None = None,
) -> Factorization:
    """Decompose the row-adjusted matrix through any admissible closure set.

    The product is independent of which admissible closure set is used.
    """
    check_mode(mode)
    _require_family(subset, family)
    closure = _resolve_closure(subset, mode, closure)
    incidence = incidence_matrix(subset, closure)
    psi_grid = psi_table(subset, family, mode, closure).grid
    masked = incidence.hadamard(psi_grid)
    return Factorization(
        mode=mode,
        incidence=incidence,
        psi_grid=psi_grid,
        masked_psi=masked,
        product=masked @ incidence.transpose(),
    )


def psi_from_matrix(matrix: Matrix, subset: Subset) -> Matrix:
    """Recover the masked recursion grid from a meet matrix of a closed set.

    For a meet-closed subset the incidence matrix is square and invertible,
    and its transpose's inverse is the Möbius matrix of the subset, so no
    elimination is needed: the result is matrix @ mobius. Equals the
    `masked_psi` of `factorize`.
    """
    if not is_closed(subset, MEET):
        raise NotClosedError("recovering the recursion grid needs a meet-closed subset")
    if matrix.rows != subset.n or matrix.cols != subset.n:
        raise DimensionError("matrix shape does not match the subset size")
    mob = mobius_matrix(ClosureSet.from_subset(subset, MEET))
    return matrix @ mob


def _closed_psi(subset: Subset, family: FunctionFamily, mode: str) -> PsiTable:
    check_mode(mode)
    if not is_closed(subset, mode):
        raise NotClosedError(f"the subset is not {mode} closed")
    closure = ClosureSet.from_subset(subset, mode)
    return psi_table(subset, family, mode, closure)


def theorem_det(subset: Subset, family: FunctionFamily, mode: str = MEET) -> Scalar:
    """Determinant of the matrix of a closed set: product of the diagonal
    recursion values, no elimination involved."""
    table = _closed_psi(subset, family, mode)
    result = ONE
    for value in table.diagonal(subset):
        result = result * value
    return result


@dataclass(frozen=True)
class RankReport:
    """Rank bounds from the diagonal recursion values plus the exact rank.

    k counts the zero diagonal values. For a nonzero matrix, k = 0 forces
    full rank and k > 0 pins the rank between n-k and n-1.
    """

    k: int
    lower: int
    upper: int
    exact: int


def rank_report(subset: Subset, family: FunctionFamily, mode: str = MEET) -> RankReport:
    """Rank trichotomy for a closed set, cross-checked against elimination."""
    table = _closed_psi(subset, family, mode)
    diag = table.diagonal(subset)
    k = sum(1 for v in diag if v.is_zero)
    matrix = build_matrix(subset, family, mode)
    n = subset.n
    if matrix.is_zero():
        lower = upper = 0
    elif k == 0:
        lower = upper = n
    else:
        lower, upper = n - k, n - 1
    exact = matrix.rank()
    if not lower <= exact <= upper:
        raise OracleMismatchError(
            f"exact rank {exact} escapes the predicted interval [{lower}, {upper}]"
        )
    return RankReport(k=k, lower=lower, upper=upper, exact=exact)


@dataclass(frozen=True)
class ThetaTable:
    """Back-substitution coefficients for the closed-set inverse.

    grid entry (k, j) is the coefficient tied to rows k and j; the
    diagonal is the reciprocal of the diagonal recursion values. Meet
    mode fills below the diagonal, join mode above; the rest is zero.
    """

    mode: str
    grid: Matrix


def theta_table(subset: Subset, family: FunctionFamily, mode: str = MEET) -> ThetaTable:
    """Solve the triangular system whose solution assembles the inverse.

    Requires a closed subset with no zero diagonal recursion value;
    raises SingularPsiError naming the first offending row otherwise.
    """
    table = _closed_psi(subset, family, mode)
    diag = table.diagonal(subset)
    for i, value in enumerate(diag):
        if value.is_zero:
            raise SingularPsiError(i)

    n = subset.n
    psi = table.grid
    incidence = incidence_matrix(subset, table.closure)
    theta = [[ZERO] * n for _ in range(n)]
    if mode == MEET:
        for j in range(n):
            theta[j][j] = ONE / diag[j]
            for k in range(j + 1, n):
                total = ZERO
                for u in range(j, k):
                    total = total + incidence[k, u] * psi[k, u] * theta[u][j]
                theta[k][j] = -(total / diag[k])
    else:
        for j in range(n):
            theta[j][j] = ONE / diag[j]
            for k in range(j - 1, -1, -1):
                total = ZERO
                for u in range(k + 1, j + 1):
                    total = total + incidence[k, u] * psi[k, u] * theta[u][j]
                theta[k][j] = -(total / diag[k])
    return ThetaTable(mode, Matrix(theta))


def theorem_inverse(subset: Subset, family: FunctionFamily, mode: str = MEET) -> Matrix:
    """Inverse of the matrix of a closed set via the triangular recursion.

    Exists iff every diagonal recursion value is nonzero; otherwise raises
    SingularPsiError naming the first offending row. Built from the
    Möbius matrix of the subset and the back-substitution coefficients,
    never from elimination.
    """
    theta = theta_table(subset, family, mode).grid
    n = subset.n
    mob = mobius_matrix(ClosureSet.from_subset(subset, mode))
    if mode == MEET:
        rows = [
            [
                _sum(mob[i, k] * theta[k, j] for k in range(j, n))
                for j in range(n)
            ]
            for i in range(n)
        ]
    else:
        rows = [
            [
                _sum(mob[k, i] * theta[k, j] for k in range(j + 1))
                for j in range(n)
            ]
            for i in range(n)
        ]
    return Matrix(rows)


def ordinary_rank(subset: Subset, table: Mapping, mode: str = MEET) -> int:
    """Rank of the one-function (ordinary) matrix of a closed set: exactly
    n minus the number of zero diagonal recursion values."""
    family = FunctionFamily([table] * subset.n)
    psi_diag = _closed_psi(subset, family, mode).diagonal(subset)
    k = sum(1 for v in psi_diag if v.is_zero)
    predicted = subset.n - k
    actual = build_matrix(subset, family, mode).rank()
    if predicted != actual:
        raise OracleMismatchError(
            f"predicted rank {predicted} but elimination found {actual}"
        )
    return predicted


def _sum(values) -> Scalar:
    total = ZERO
    for v in values:
        total = total + v
    return total
