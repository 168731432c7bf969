"""Orthonormal syzygy bases of the shifted-leading-form matrices, by degree.

The nullspace at degree k+1 splits into extended syzygies (variable
shifts of degree-k syzygies) and pure ones that first appear at k+1.
The update step orthogonalises the shifted basis, completes it against
the next matrix, and tags the new columns as pure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import RankPolicy, numerical_rank, resolve_tolerance, svd
from .macaulay import BlockLayout, MacaulayMatrix, ShiftMatrix, apply_extension
from .poly import Polynomial, PolynomialSystem, monomials_of_degree, multiply_monomial


@dataclass(frozen=True, eq=False)
class UpdateDiagnostics:
    """Rank decisions and spectra behind one syzygy-basis step."""

    mode: str  # "direct" or "update"
    rank_extension: int | None  # rank of the shifted-basis matrix
    rank_complement: int  # rank decision on the completing matrix
    spectrum_extension: np.ndarray | None
    spectrum_complement: np.ndarray
    tau: float | None
    tau_prime: float

    @property
    def sigma_min_accepted(self) -> float | None:
        s, r = self.spectrum_complement, self.rank_complement
        return float(s[r - 1]) if r >= 1 and len(s) else None

    @property
    def sigma_max_rejected(self) -> float | None:
        s, r = self.spectrum_complement, self.rank_complement
        return float(s[r]) if r < len(s) else None

    @property
    def gap_ratio(self) -> float | None:
        lo, hi = self.sigma_max_rejected, self.sigma_min_accepted
        if hi is None or lo is None:
            return None
        return np.inf if lo == 0.0 else hi / lo


@dataclass(frozen=True, eq=False)
class SyzygyBasis:
    """Orthonormal nullspace basis at one degree, with pure-column tags."""

    degree: int
    basis: np.ndarray
    pure_columns: tuple[int, ...]
    diagnostics: UpdateDiagnostics | None = None

    @property
    def ncols(self) -> int:
        return self.basis.shape[1]

    def pure_basis(self) -> np.ndarray:
        return self.basis[:, list(self.pure_columns)]


def initial_syzygies(c_matrix: MacaulayMatrix, policy: RankPolicy) -> SyzygyBasis:
    """Nullspace basis straight from the SVD; every column counts as pure."""
    a = c_matrix.matrix
    if a.shape[1] == 0:
        diag = UpdateDiagnostics("direct", None, 0, None, np.zeros(0), None, 0.0)
        return SyzygyBasis(c_matrix.degree, np.zeros((0, 0)), (), diag)
    res = svd(a)
    r = numerical_rank(res.singular_values, policy, *a.shape)
    tau = resolve_tolerance(res.singular_values, *a.shape, policy)
    basis = res.Vh[r:].T.copy()
    diag = UpdateDiagnostics("direct", None, r, None, res.singular_values, None, tau)
    return SyzygyBasis(c_matrix.degree, basis, tuple(range(basis.shape[1])), diag)


def update_syzygies(
    nk: SyzygyBasis,
    c_next: MacaulayMatrix,
    shifts: list[ShiftMatrix],
    policy: RankPolicy,
) -> SyzygyBasis:
    """One degree step: reuse the degree-k basis to build the k+1 basis.

    The shifted columns are orthogonalised (their left singular vectors
    Q1 span the extended syzygies); the orthogonal complement Q2 is then
    screened against the next matrix, and the nullspace directions found
    there enter as pure columns Q2 V2.
    """
    if nk.degree + 1 != c_next.degree:
        raise ValueError(f"basis degree {nk.degree} does not precede matrix degree {c_next.degree}")
    q_next = c_next.layout.total_cols
    if nk.basis.shape[0] != shifts[0].source.total_cols or shifts[0].target.total_cols != q_next:
        raise ValueError("shift family does not connect the basis layout to the matrix layout")

    a = apply_extension(shifts, nk.basis)
    if a.shape[1] == 0:
        r = 0
        q_full = np.eye(q_next)
        tau = None
        spectrum_a = np.zeros(0)
    else:
        res_a = svd(a)
        r = numerical_rank(res_a.singular_values, policy, *a.shape)
        tau = resolve_tolerance(res_a.singular_values, *a.shape, policy)
        q_full = res_a.U
        spectrum_a = res_a.singular_values
    q1, q2 = q_full[:, :r], q_full[:, r:]

    b = c_next.matrix @ q2
    if b.shape[1] == 0:
        r_prime = 0
        spectrum_b = np.zeros(0)
        tau_prime = 0.0
        pure = np.zeros((q_next, 0))
    else:
        res_b = svd(b)
        spectrum_b = res_b.singular_values
        r_prime = numerical_rank(spectrum_b, policy, *b.shape)
        tau_prime = resolve_tolerance(spectrum_b, *b.shape, policy)
        v2 = res_b.Vh[r_prime:].T
        pure = q2 @ v2

    basis = np.hstack([q1, pure])
    diag = UpdateDiagnostics("update", r, r_prime, spectrum_a, spectrum_b, tau, tau_prime)
    return SyzygyBasis(c_next.degree, basis, tuple(range(r, basis.shape[1])), diag)


def syzygy_to_polynomial(v: np.ndarray, system: PolynomialSystem, layout: BlockLayout) -> Polynomial:
    """Combine the full generators with the cofactors encoded in v.

    For an exact nullspace vector the leading forms cancel, so the result
    drops below the layout degree.
    """
    if len(v) != layout.total_cols:
        raise ValueError(f"coordinate vector has length {len(v)}, layout expects {layout.total_cols}")
    p = Polynomial.zero(system.num_vars)
    for b in layout.blocks:
        if b.width == 0:
            continue
        g = system.generators[b.generator]
        for j, alpha in enumerate(monomials_of_degree(system.num_vars, b.shift_degree)):
            coeff = float(v[b.offset + j])
            if coeff != 0.0:
                p = p + multiply_monomial(g, alpha).scale(coeff)
    return p
