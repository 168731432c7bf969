"""Dense SVD plumbing: tolerances, numerical rank, nullspaces, echelon pivots."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

EPS_DOUBLE = float(np.finfo(np.float64).eps)

# A rank cut under the gap strategy needs at least this ratio between
# consecutive singular values; flatter spectra count as full rank.
GAP_RATIO_FLOOR = 1e3


class NonFiniteMatrixError(ValueError):
    """Raised when a matrix handed to the SVD contains NaN or infinity."""


class RankStrategy(Enum):
    TOLERANCE = "tolerance"
    GAP_MAX = "gap"


@dataclass(frozen=True)
class RankPolicy:
    """How to turn a singular-value spectrum into a rank decision."""

    strategy: RankStrategy = RankStrategy.TOLERANCE
    tau_override: float | None = None
    epsilon_machine: float = EPS_DOUBLE

    def __post_init__(self):
        if self.tau_override is not None and not self.tau_override > 0:
            raise ValueError("tau_override must be positive")


@dataclass(frozen=True, eq=False)
class SvdResult:
    U: np.ndarray
    singular_values: np.ndarray
    Vh: np.ndarray

    @property
    def V(self) -> np.ndarray:
        return self.Vh.T


def svd(a: np.ndarray) -> SvdResult:
    """Full SVD of a real matrix; U and V are square and orthogonal."""
    a = np.asarray(a, dtype=float)
    if a.size and not np.isfinite(a).all():
        raise NonFiniteMatrixError("matrix contains non-finite entries")
    u, s, vh = np.linalg.svd(a, full_matrices=True)
    return SvdResult(u, s, vh)


def default_tolerance(m: int, n: int, sigma_max: float, eps: float) -> float:
    """Standard rank threshold max(m, n) * sigma_max * eps."""
    return max(m, n) * sigma_max * eps


def resolve_tolerance(sv: np.ndarray, m: int, n: int, policy: RankPolicy) -> float:
    """Tolerance a policy implies for a given spectrum and matrix shape."""
    if policy.tau_override is not None:
        return policy.tau_override
    sigma_max = float(sv[0]) if len(sv) else 0.0
    return default_tolerance(m, n, sigma_max, policy.epsilon_machine)


def numerical_rank(sv, policy: RankPolicy, m: int, n: int) -> int:
    """Rank decision for a non-increasing singular-value sequence.

    Tolerance strategy counts the values above the threshold.  The gap
    strategy picks the index that maximises sigma_r / sigma_{r+1} among
    candidates above the default-formula floor, declaring full rank when
    no consecutive ratio reaches GAP_RATIO_FLOOR.
    """
    sv = np.asarray(sv, dtype=float)
    if len(sv) == 0:
        return 0
    if policy.strategy is RankStrategy.TOLERANCE:
        tau = resolve_tolerance(sv, m, n, policy)
        return int(np.sum(sv > tau))
    # gap strategy: the floor always comes from the default formula
    floor = default_tolerance(m, n, float(sv[0]), policy.epsilon_machine)
    best_r, best_ratio = None, 0.0
    for r in range(1, len(sv)):
        if sv[r - 1] <= floor:
            break
        ratio = np.inf if sv[r] == 0.0 else sv[r - 1] / sv[r]
        if ratio > best_ratio:
            best_ratio, best_r = ratio, r
    if best_r is None or best_ratio <= GAP_RATIO_FLOOR:
        return int(np.sum(sv > floor)) if sv[-1] <= floor else len(sv)
    return best_r


def nullspace_basis(a: np.ndarray, policy: RankPolicy) -> np.ndarray:
    """Orthonormal basis of the (numerical) nullspace as matrix columns."""
    a = np.asarray(a, dtype=float)
    if a.shape[1] == 0:
        return np.zeros((0, 0))
    res = svd(a)
    r = numerical_rank(res.singular_values, policy, *a.shape)
    return res.Vh[r:].T.copy()


def echelon_pivot_columns(a: np.ndarray, tol: float) -> list[int]:
    """Pivot columns of a row echelon form under partial (row) pivoting.

    Columns are scanned left to right and never permuted; a pivot is
    accepted only if its magnitude after elimination exceeds tol.
    """
    m = np.array(a, dtype=float)
    if m.size == 0:
        return []
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        i = r + int(np.argmax(np.abs(m[r:, c])))
        if abs(m[i, c]) <= tol:
            continue
        if i != r:
            m[[r, i]] = m[[i, r]]
        factors = m[r + 1 :, c] / m[r, c]
        m[r + 1 :, c:] -= np.outer(factors, m[r, c:])
        pivots.append(c)
        r += 1
    return pivots
