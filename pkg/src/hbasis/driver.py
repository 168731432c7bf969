"""Degree-by-degree completion of a generator system to an H-basis.

Each degree contributes an orthonormal syzygy basis; the polynomials
behind the pure syzygies are reduced against the current system, and any
remainder that is not numerically zero joins the system, restarting the
sweep at its degree.  Termination is governed by a bound maintained from
the pairwise lcm degrees of the leading monomials discovered so far.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations

import numpy as np

from .linalg import (
    NonFiniteMatrixError,
    RankPolicy,
    echelon_pivot_columns,
    numerical_rank,
    svd,
)
from .macaulay import MacaulayMatrix, build_macaulay, build_shift_family
from .poly import MultiIndex, Polynomial, PolynomialSystem, dim_homogeneous, monomial_unrank
from .reduction import Reducer, is_numerically_zero
from .syzygy import SyzygyBasis, initial_syzygies, syzygy_to_polynomial, update_syzygies

# Hard stop against float pathologies that keep appending generators.
MAX_OUTER_ITERATIONS = 10_000


class Status(Enum):
    SUCCESS = "Success"
    CONSTANT_IDEAL = "ConstantIdeal"
    DEGREE_CAP_REACHED = "DegreeCapReached"
    NUMERICAL_BREAKDOWN = "NumericalBreakdown"


class NormalizeMode(Enum):
    NONE = "none"
    L1 = "l1"
    L2 = "l2"
    LINF = "linf"


@dataclass(frozen=True)
class HBasisConfig:
    epsilon: float = 1e-10
    rank_policy: RankPolicy = field(default_factory=RankPolicy)
    normalize: NormalizeMode = NormalizeMode.NONE
    max_degree_cap: int | None = None  # resolved to 3x the initial bound
    diagnostics: bool = True
    verify: bool = True

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")


def normalize_polynomial(p: Polynomial, mode: NormalizeMode) -> Polynomial:
    if mode is NormalizeMode.NONE:
        return p
    if p.is_zero():
        raise ValueError("cannot normalize the zero polynomial")
    return p.scale(1.0 / p.coefficient_norm(mode.value))


def _strip_negligible_leading(r: Polynomial, epsilon: float) -> Polynomial:
    """Drop leading homogeneous components whose norm is numerically zero.

    A remainder can carry float dust above its genuine degree; a
    generator whose leading form is dust poisons every later matrix, so
    the degree of an appended remainder is decided by its first
    component that clears the zero threshold.
    """
    k = r.degree
    while k > 0:
        top = {a: c for a, c in r.terms.items() if sum(a) == k}
        norm = sum(c * c for c in top.values()) ** 0.5
        if norm > epsilon:
            break
        r = r.truncate_below(k)
        k = r.degree
    return r


def normalize_system(system: PolynomialSystem, mode: NormalizeMode) -> PolynomialSystem:
    """Divide every generator by the chosen norm of its coefficients."""
    if mode is NormalizeMode.NONE:
        return system
    return PolynomialSystem(
        tuple(normalize_polynomial(g, mode) for g in system.generators), system.num_vars
    )


def _divides(a: MultiIndex, b: MultiIndex) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm_degree(a: MultiIndex, b: MultiIndex) -> int:
    return sum(max(x, y) for x, y in zip(a, b))


@dataclass
class BoundTracker:
    """Minimal leading monomials seen so far, and the degree bound they imply.

    The bound starts at twice the maximal input degree and never
    decreases.  When a degree contributes a leading monomial that no
    stored one divides, the bound becomes the maximum pairwise lcm
    degree over the stored minimal set together with the monomials of
    that degree (clamped from below by the current degree and by
    earlier values); degrees without new monomials leave it untouched.
    """

    monomials: set[MultiIndex] = field(default_factory=set)
    bound: int = 0
    history: list[tuple[int, int]] = field(default_factory=list)

    def update(self, new_monomials: set[MultiIndex], k: int) -> None:
        changed = False
        for m in sorted(new_monomials):
            if any(_divides(s, m) for s in self.monomials):
                continue
            self.monomials = {s for s in self.monomials if not _divides(m, s)}
            self.monomials.add(m)
            changed = True
        if changed:
            pool = self.monomials | set(new_monomials)
            if len(pool) >= 2:
                candidate = max(_lcm_degree(a, b) for a, b in combinations(pool, 2))
                self.bound = max(self.bound, candidate, k)
        if not self.history or self.history[-1][1] != self.bound:
            self.history.append((k, self.bound))


def update_bound(tracker: BoundTracker, new_monomials: set[MultiIndex], k: int) -> BoundTracker:
    """Functional wrapper around BoundTracker.update."""
    out = BoundTracker(set(tracker.monomials), tracker.bound, list(tracker.history))
    out.update(new_monomials, k)
    return out


def leading_monomials_at_degree(c_matrix: MacaulayMatrix, tol: float) -> set[MultiIndex]:
    """Degree-k leading monomials of the span, from echelon pivots.

    Rows of the transpose are the shifted leading forms; its columns are
    already ordered with the graded-lex greatest monomial first, so the
    pivot columns name the leading monomials directly.
    """
    if c_matrix.layout.total_cols == 0:
        return set()
    n, k = c_matrix.layout.num_vars, c_matrix.degree
    pivots = echelon_pivot_columns(c_matrix.matrix.T, tol)
    return {monomial_unrank(n, k, c) for c in pivots}


def hilbert_function_numeric(system: PolynomialSystem, k: int, policy: RankPolicy | None = None) -> int:
    """Dimension of degree-k polynomials modulo the shifted leading forms."""
    if k < 0:
        raise ValueError("degree must be non-negative")
    policy = policy or RankPolicy()
    c_matrix = build_macaulay(system, k)
    if c_matrix.layout.total_cols == 0:
        rank = 0
    else:
        res = svd(c_matrix.matrix)
        rank = numerical_rank(res.singular_values, policy, *c_matrix.matrix.shape)
    return dim_homogeneous(system.num_vars, k) - rank


@dataclass(frozen=True, eq=False)
class DegreeRecord:
    """Per-degree diagnostics: shapes, rank decisions, remainder norms."""

    k: int
    rows: int
    cols: int
    density: float
    rank: int
    nullity: int
    pure_count: int
    mode: str
    tau: float | None
    tau_prime: float | None
    sigma_min_accepted: float | None
    sigma_max_rejected: float | None
    gap_ratio: float | None
    remainder_norms: tuple[float, ...]
    appended_degree: int | None


@dataclass(frozen=True, eq=False)
class HBasisResult:
    generators: PolynomialSystem
    status: Status
    records: tuple[DegreeRecord, ...]
    bound_history: tuple[tuple[int, int], ...]
    bound: int
    wall_time: float
    appended: tuple[Polynomial, ...]

    @property
    def d_max(self) -> int:
        return max(g.degree for g in self.generators.generators)

    @property
    def num_generators(self) -> int:
        return len(self.generators)


def _pivot_tolerance(c_matrix: MacaulayMatrix, policy: RankPolicy) -> float:
    if policy.tau_override is not None:
        return policy.tau_override
    m = c_matrix.matrix
    scale = float(np.linalg.norm(m)) if m.size else 0.0
    return max(m.shape) * scale * policy.epsilon_machine if m.size else 0.0


def _syzygy_step(
    system: PolynomialSystem,
    k: int,
    prev: SyzygyBasis | None,
    policy: RankPolicy,
) -> tuple[MacaulayMatrix, SyzygyBasis]:
    c_matrix = build_macaulay(system, k)
    if prev is None or prev.ncols == 0:
        basis = initial_syzygies(c_matrix, policy)
    else:
        shifts = build_shift_family(system, k - 1)
        basis = update_syzygies(prev, c_matrix, shifts, policy)
    return c_matrix, basis


def _record_for(c_matrix: MacaulayMatrix, basis: SyzygyBasis, norms, appended_degree) -> DegreeRecord:
    d = basis.diagnostics
    rank = c_matrix.layout.total_cols - basis.ncols
    return DegreeRecord(
        k=c_matrix.degree,
        rows=c_matrix.matrix.shape[0],
        cols=c_matrix.matrix.shape[1],
        density=c_matrix.density,
        rank=rank,
        nullity=basis.ncols,
        pure_count=len(basis.pure_columns),
        mode=d.mode if d else "direct",
        tau=d.tau if d else None,
        tau_prime=d.tau_prime if d else None,
        sigma_min_accepted=d.sigma_min_accepted if d else None,
        sigma_max_rejected=d.sigma_max_rejected if d else None,
        gap_ratio=d.gap_ratio if d else None,
        remainder_norms=tuple(norms),
        appended_degree=appended_degree,
    )


def compute_hbasis(system: PolynomialSystem, config: HBasisConfig | None = None) -> HBasisResult:
    """Extend a generator system until every syzygy reduces to zero.

    Sweeps degrees from the minimal generator degree up to the current
    bound.  Pure syzygies are reduced in column order; the first nonzero
    remainder is appended (normalized per the configuration) and the
    sweep restarts at its degree.  A degree-0 remainder means the ideal
    contains a unit. On success a verification pass re-reduces every
    pure syzygy of the final system.
    """
    config = config or HBasisConfig()
    policy = config.rank_policy
    start = time.perf_counter()

    if any(g.degree == 0 for g in system.generators):
        return _constant_result(system.num_vars, (), (), 0, start)

    current = normalize_system(system, config.normalize)
    max_input_degree = max(current.degrees)
    k = min(current.degrees)
    tracker = BoundTracker(bound=2 * max_input_degree)
    tracker.history.append((k, tracker.bound))
    cap = config.max_degree_cap if config.max_degree_cap is not None else 3 * tracker.bound
    if cap < 2 * max_input_degree:
        raise ValueError("max_degree_cap must cover twice the maximal input degree")

    records: list[DegreeRecord] = []
    appended: list[Polynomial] = []
    reducer = Reducer(current, policy)
    prev_basis: SyzygyBasis | None = None
    status = Status.SUCCESS
    iterations = 0

    try:
        while k <= tracker.bound:
            iterations += 1
            if k > cap:
                status = Status.DEGREE_CAP_REACHED
                break
            if iterations > MAX_OUTER_ITERATIONS:
                status = Status.NUMERICAL_BREAKDOWN
                break
            degree_processed = k
            c_matrix, basis = _syzygy_step(current, k, prev_basis, policy)
            norms: list[float] = []
            new_generator: Polynomial | None = None
            for col in basis.pure_columns:
                # the degree-k part of the combination is nullspace dust; drop it
                p = syzygy_to_polynomial(basis.basis[:, col], current, c_matrix.layout).truncate_below(k)
                result = reducer.reduce(p)
                norms.append(result.remainder.norm2())
                if not is_numerically_zero(result.remainder, config.epsilon):
                    candidate = _strip_negligible_leading(result.remainder, config.epsilon)
                    new_generator = normalize_polynomial(candidate, config.normalize)
                    break
            if config.diagnostics:
                records.append(
                    _record_for(c_matrix, basis, norms, new_generator.degree if new_generator else None)
                )
            if new_generator is not None:
                if new_generator.degree == 0:
                    return _constant_result(
                        system.num_vars, tuple(records), tuple(tracker.history),
                        tracker.bound, start, tuple(appended),
                    )
                appended.append(new_generator)
                current = current.append(new_generator)
                reducer = Reducer(current, policy)
                prev_basis = None
                k = new_generator.degree - 1
            else:
                prev_basis = basis
            tracker.update(
                leading_monomials_at_degree(c_matrix, _pivot_tolerance(c_matrix, policy)),
                degree_processed,
            )
            k += 1
    except (NonFiniteMatrixError, np.linalg.LinAlgError):
        status = Status.NUMERICAL_BREAKDOWN

    if status is Status.SUCCESS and config.verify:
        if not verify_hbasis(current, config):
            status = Status.NUMERICAL_BREAKDOWN

    return HBasisResult(
        generators=current,
        status=status,
        records=tuple(records),
        bound_history=tuple(tracker.history),
        bound=tracker.bound,
        wall_time=time.perf_counter() - start,
        appended=tuple(appended),
    )


def _constant_result(num_vars, records, history, bound, start, appended=()) -> HBasisResult:
    one = PolynomialSystem((Polynomial.constant(num_vars, 1.0),), num_vars)
    return HBasisResult(
        generators=one,
        status=Status.CONSTANT_IDEAL,
        records=tuple(records),
        bound_history=tuple(history),
        bound=bound,
        wall_time=time.perf_counter() - start,
        appended=tuple(appended),
    )


def verify_hbasis(system: PolynomialSystem, config: HBasisConfig | None = None) -> bool:
    """Re-reduce every pure syzygy of the system up to its bound.

    Runs a fresh syzygy chain over the final generator list and checks
    that all remainders are numerically zero.
    """
    config = config or HBasisConfig()
    policy = config.rank_policy
    max_input_degree = max(system.degrees)
    tracker = BoundTracker(bound=2 * max_input_degree)
    reducer = Reducer(system, policy)
    prev: SyzygyBasis | None = None
    k = min(system.degrees)
    while k <= tracker.bound:
        c_matrix, basis = _syzygy_step(system, k, prev, policy)
        for col in basis.pure_columns:
            p = syzygy_to_polynomial(basis.basis[:, col], system, c_matrix.layout).truncate_below(k)
            result = reducer.reduce(p)
            if not is_numerically_zero(result.remainder, config.epsilon):
                return False
        prev = basis
        tracker.update(leading_monomials_at_degree(c_matrix, _pivot_tolerance(c_matrix, policy)), k)
        k += 1
    return True
