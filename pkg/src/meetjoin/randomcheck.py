"""Seeded random instances and the property battery behind `verify`.

Every closed-form result in `rowadjusted` is replayed here against the
elimination oracles on pseudo-random instances. Generation is fully
driven by one `random.Random`, so a seed reproduces the exact run.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    MeetJoinError,
    NoJoinError,
    NoMeetError,
    NotSortedError,
    OracleMismatchError,
    SingularError,
)
from .matrix import Matrix
from .numtheory import divisors_of
from .posets import (
    JOIN,
    MEET,
    ClosureSet,
    DivisorLattice,
    FinitePoset,
    Subset,
    closed_hull,
    closure_set,
    is_closed,
    linear_extension,
)
from .rowadjusted import (
    FunctionFamily,
    build_matrix,
    factorize,
    ordinary_rank,
    psi_from_matrix,
    psi_table,
    rank_report,
    theorem_det,
    theorem_inverse,
)
from .scalar import ONE, ZERO, Scalar

DIVISOR_BASES = (30, 36, 48, 60, 72, 90, 96, 120, 210)

CHECK_NAMES = (
    "factorization",
    "factorization_enlarged",
    "d_invariance",
    "psi_reconstruction",
    "psi_two_routes",
    "transpose_duality",
    "specialization",
    "det_theorem",
    "rank_trichotomy",
    "inverse_iff",
    "psi_from_matrix",
    "ordinary_rank",
    "attainment_lower",
    "attainment_upper",
)


@dataclass(frozen=True)
class Instance:
    """One generated test case: a subset, a family total on `universe`."""

    label: str
    subset: Subset
    family: FunctionFamily
    mode: str
    universe: tuple
    identical_rows: bool


@dataclass(frozen=True)
class CheckFailure:
    check: str
    case: int
    label: str
    detail: str


@dataclass
class VerifyReport:
    seed: int
    cases: int
    counts: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def tally(self, check: str):
        self.counts[check] = self.counts.get(check, 0) + 1

    def fail(self, check: str, case: int, label: str, detail: str):
        self.failures.append(CheckFailure(check, case, label, detail))


def _random_scalar(rng: random.Random) -> Scalar:
    real = Fraction(rng.choice((-3, -2, -1, 0, 0, 1, 1, 2, 3)), rng.choice((1, 1, 2, 3)))
    imag = Fraction(0)
    if rng.random() < 0.2:
        imag = Fraction(rng.choice((-2, -1, 1, 2)), rng.choice((1, 2)))
    return Scalar(real, imag)


def _random_family(rng: random.Random, n: int, universe) -> tuple[FunctionFamily, bool]:
    identical = rng.random() < 0.2
    if identical:
        table = {x: _random_scalar(rng) for x in universe}
        return FunctionFamily([table] * n), True
    tables = [{x: _random_scalar(rng) for x in universe} for _ in range(n)]
    return FunctionFamily(tables), False


def _divisor_instance(rng: random.Random, mode: str, force_closed: bool, max_n: int):
    base = rng.choice(DIVISOR_BASES)
    divs = divisors_of(base)
    size = rng.randint(1, min(max_n, len(divs)))
    members = sorted(rng.sample(divs, size))
    subset = Subset(DivisorLattice(), members)
    if force_closed:
        subset = closed_hull(subset, mode)
        if subset.n > max_n:
            raise NotSortedError("hull too large, retry")
    label = f"divisors({base}) S={list(subset.members)} mode={mode}"
    return subset, tuple(divs), label


def _poset_instance(rng: random.Random, mode: str, force_closed: bool, max_n: int):
    m = rng.randint(2, max_n + 1)
    labels = [f"p{i}" for i in range(1, m + 1)]
    covers = []
    for i in range(m):
        for j in range(i + 1, m):
            if rng.random() < 0.35:
                covers.append((labels[i], labels[j]))
    backend = FinitePoset(covers, elements=labels)
    size = rng.randint(1, min(max_n, m))
    sample = rng.sample(labels, size)
    subset = Subset(backend, linear_extension(backend, sample))
    closure_set(subset, mode)
    if force_closed:
        subset = closed_hull(subset, mode)
        if subset.n > max_n:
            raise NotSortedError("hull too large, retry")
    label = f"poset({m} elems, {len(covers)} edges) S={list(subset.members)} mode={mode}"
    return subset, tuple(labels), label


def random_instance(
    rng: random.Random,
    mode: str | None = None,
    force_closed: bool = False,
    max_n: int = 8,
) -> Instance:
    """Draw one instance; retries until the needed meets/joins exist."""
    for _ in range(300):
        picked = mode if mode is not None else rng.choice((MEET, JOIN))
        try:
            if rng.random() < 0.5:
                subset, universe, label = _divisor_instance(
                    rng, picked, force_closed, max_n
                )
            else:
                subset, universe, label = _poset_instance(
                    rng, picked, force_closed, max_n
                )
        except (NoMeetError, NoJoinError, NotSortedError):
            continue
        family, identical = _random_family(rng, subset.n, universe)
        return Instance(label, subset, family, picked, universe, identical)
    subset = Subset(DivisorLattice(), [1, 2, 4])
    universe = (1, 2, 4)
    family, identical = _random_family(rng, 3, universe)
    return Instance("fallback divisors S=[1, 2, 4]", subset, family, mode or MEET, universe, identical)


def _enlarged_closure(rng: random.Random, inst: Instance, minimal: ClosureSet) -> ClosureSet | None:
    extras = [x for x in inst.universe if x not in minimal]
    if not extras:
        return None
    extra = rng.choice(extras)
    elements = linear_extension(
        inst.subset.backend, list(minimal.elements) + [extra]
    )
    return ClosureSet(inst.subset.backend, elements, inst.mode)


def _psi_reconstructs(inst: Instance, closure: ClosureSet, grid: Matrix) -> str | None:
    backend = inst.subset.backend
    elems = closure.elements
    for i in range(inst.family.n):
        for k, dk in enumerate(elems):
            total = ZERO
            for v, dv in enumerate(elems):
                if inst.mode == MEET and backend.leq(dv, dk):
                    total = total + grid[i, v]
                elif inst.mode == JOIN and backend.leq(dk, dv):
                    total = total + grid[i, v]
            want = inst.family.value(i, dk)
            if total != want:
                return f"row {i + 1} at {dk!r}: summed {total}, function value {want}"
    return None


def check_instance(
    inst: Instance,
    report: VerifyReport,
    case: int,
    rng: random.Random,
    fault_negate_psi: bool = False,
):
    """Run every battery property that applies to the instance."""
    subset, family, mode = inst.subset, inst.family, inst.mode
    matrix = build_matrix(subset, family, mode)

    minimal = closure_set(subset, mode)
    fact = factorize(subset, family, mode, minimal)
    product = fact.product
    if fault_negate_psi:
        product = (-fact.psi_grid).hadamard(fact.incidence) @ fact.incidence.transpose()
    report.tally("factorization")
    if product != matrix:
        report.fail(
            "factorization", case, inst.label,
            "masked recursion grid times incidence transpose differs from the direct matrix",
        )

    enlarged = _enlarged_closure(rng, inst, minimal)
    grids = [(minimal, fact.psi_grid)]
    if enlarged is not None:
        fact_big = factorize(subset, family, mode, enlarged)
        grids.append((enlarged, fact_big.psi_grid))
        report.tally("factorization_enlarged")
        if fact_big.product != matrix:
            report.fail(
                "factorization_enlarged", case, inst.label,
                f"factorization through enlarged set {list(enlarged.elements)} broke",
            )
        report.tally("d_invariance")
        if fact_big.product != fact.product:
            report.fail(
                "d_invariance", case, inst.label,
                "product changed when the closure set was enlarged",
            )

    for closure, grid in grids:
        report.tally("psi_reconstruction")
        problem = _psi_reconstructs(inst, closure, grid)
        if problem:
            report.fail("psi_reconstruction", case, inst.label, problem)

    report.tally("psi_two_routes")
    via_mobius = psi_table(subset, family, mode, minimal, method="mobius").grid
    if via_mobius != fact.psi_grid:
        report.fail(
            "psi_two_routes", case, inst.label,
            "recursion and Möbius-sum grids disagree",
        )

    report.tally("transpose_duality")
    if build_matrix(subset, family, mode, column_adjusted=True) != matrix.transpose():
        report.fail(
            "transpose_duality", case, inst.label,
            "column-adjusted output is not the transpose",
        )

    if inst.identical_rows:
        report.tally("specialization")
        if matrix != matrix.transpose():
            report.fail(
                "specialization", case, inst.label,
                "single-function matrix is not symmetric",
            )

    if not is_closed(subset, mode):
        return

    report.tally("det_theorem")
    closed_det = theorem_det(subset, family, mode)
    if closed_det != matrix.det():
        report.fail(
            "det_theorem", case, inst.label,
            f"closed form gave {closed_det}, elimination gave {matrix.det()}",
        )

    report.tally("rank_trichotomy")
    try:
        rr = rank_report(subset, family, mode)
    except OracleMismatchError as exc:
        report.fail("rank_trichotomy", case, inst.label, str(exc))
        rr = None
    if rr is not None:
        n = subset.n
        if not matrix.is_zero():
            if rr.k == 0 and rr.exact != n:
                report.fail(
                    "rank_trichotomy", case, inst.label,
                    f"k=0 but exact rank {rr.exact} < {n}",
                )
            if rr.k > 0 and not (n - rr.k <= rr.exact <= n - 1):
                report.fail(
                    "rank_trichotomy", case, inst.label,
                    f"k={rr.k} but exact rank {rr.exact} outside [{n - rr.k}, {n - 1}]",
                )

    report.tally("inverse_iff")
    diag = psi_table(subset, family, mode, ClosureSet.from_subset(subset, mode)).diagonal(subset)
    if all(not v.is_zero for v in diag):
        try:
            inv = theorem_inverse(subset, family, mode)
        except MeetJoinError as exc:
            report.fail("inverse_iff", case, inst.label, f"unexpected {exc}")
        else:
            n = subset.n
            ident = Matrix.identity(n)
            if inv @ matrix != ident or matrix @ inv != ident:
                report.fail(
                    "inverse_iff", case, inst.label,
                    "closed-form inverse fails B*M = M*B = I",
                )
            else:
                try:
                    if inv != matrix.inverse():
                        report.fail(
                            "inverse_iff", case, inst.label,
                            "closed-form inverse differs from elimination inverse",
                        )
                except SingularError:
                    report.fail(
                        "inverse_iff", case, inst.label,
                        "all recursion diagonals nonzero yet elimination found no inverse",
                    )
    else:
        if not matrix.det().is_zero:
            report.fail(
                "inverse_iff", case, inst.label,
                "zero recursion diagonal but nonzero determinant",
            )

    if mode == MEET:
        report.tally("psi_from_matrix")
        recovered = psi_from_matrix(matrix, subset)
        self_fact = factorize(subset, family, mode, ClosureSet.from_subset(subset, mode))
        if recovered != self_fact.masked_psi:
            report.fail(
                "psi_from_matrix", case, inst.label,
                "grid recovered from the matrix differs from the factorization grid",
            )

    if inst.identical_rows:
        report.tally("ordinary_rank")
        try:
            predicted = ordinary_rank(subset, inst.family.table(0), mode)
        except OracleMismatchError as exc:
            report.fail("ordinary_rank", case, inst.label, str(exc))
        else:
            if predicted != matrix.rank():
                report.fail(
                    "ordinary_rank", case, inst.label,
                    f"predicted {predicted}, elimination found {matrix.rank()}",
                )


def _pentagon() -> tuple[Subset, FunctionFamily]:
    backend = FinitePoset(
        [("x1", "x2"), ("x1", "x3"), ("x3", "x4"), ("x4", "x5"), ("x2", "x5")],
        elements=["x1", "x2", "x3", "x4", "x5"],
    )
    subset = Subset(backend, ["x1", "x2", "x3", "x4", "x5"])
    ones = {
        (1, "x2"), (2, "x1"), (2, "x3"), (3, "x3"), (3, "x4"), (4, "x4"), (4, "x5"),
    }
    tables = [
        {x: (ONE if (i, x) in ones else ZERO) for x in subset.members}
        for i in range(5)
    ]
    return subset, FunctionFamily(tables)


def check_attainment(report: VerifyReport):
    """Both rank bounds are reached by concrete constructions.

    Lower: constant function over an antichain of primes above 1; every
    recursion diagonal except the bottom vanishes and the all-ones matrix
    has rank exactly n - k = 1. Upper: the pentagon instance has
    k = n - 1 yet rank n - 1.
    """
    subset = Subset(DivisorLattice(), [1, 2, 3, 5, 7])
    family = FunctionFamily([{d: ONE for d in subset.members}] * 5)
    rr = rank_report(subset, family, MEET)
    report.tally("attainment_lower")
    if not (rr.k == 4 and rr.exact == subset.n - rr.k == rr.lower):
        report.fail(
            "attainment_lower", 0, "constant family on {1,2,3,5,7}",
            f"expected rank to hit the lower bound 1 with k=4, got {rr}",
        )

    pent_subset, pent_family = _pentagon()
    rr = rank_report(pent_subset, pent_family, MEET)
    report.tally("attainment_upper")
    if not (rr.k == 4 and rr.exact == 4 == rr.upper):
        report.fail(
            "attainment_upper", 0, "pentagon lattice instance",
            f"expected rank to hit the upper bound 4 with k=4, got {rr}",
        )


def run_verify(seed: int, cases: int, fault_negate_psi: bool = False) -> VerifyReport:
    """Generate `cases` instances from `seed` and run the whole battery.

    A third of the instances are forced closed so the determinant, rank,
    and inverse checks fire often. `fault_negate_psi` corrupts the
    factorization on purpose; it must make the run fail (harness sanity).
    """
    if cases < 1:
        raise ValueError("cases must be at least 1")
    rng = random.Random(seed)
    report = VerifyReport(seed=seed, cases=cases)
    for case in range(1, cases + 1):
        force_closed = case % 3 == 0
        inst = random_instance(rng, force_closed=force_closed)
        check_instance(inst, report, case, rng, fault_negate_psi=fault_negate_psi)
    check_attainment(report)
    return report
