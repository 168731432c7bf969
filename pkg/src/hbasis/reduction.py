"""Orthogonal reduction of a polynomial against a generator system.

Degree by degree, the leading form is split into the part spanned by the
shifted leading forms (which turns into cofactor contributions) and an
orthogonal remainder.  Quotient degrees never exceed the input degree,
and the remainder lives in the orthogonal complements, one per degree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .linalg import NonFiniteMatrixError, RankPolicy, numerical_rank, resolve_tolerance, svd
from .macaulay import MacaulayMatrix, build_macaulay
from .poly import HomogeneousForm, Polynomial, PolynomialSystem, monomials_of_degree


class ZeroTestMode(Enum):
    ABSOLUTE = "absolute"
    RELATIVE = "relative"


def is_numerically_zero(
    r: Polynomial,
    epsilon: float,
    mode: ZeroTestMode = ZeroTestMode.ABSOLUTE,
    scale: float = 1.0,
) -> bool:
    """Whether the coefficient 2-norm of r is below the threshold."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    norm = r.norm2()
    if mode is ZeroTestMode.ABSOLUTE:
        return norm <= epsilon
    return norm <= epsilon * max(1.0, scale)


@dataclass(frozen=True, eq=False)
class HomogeneousDecomposition:
    """One degree-k split g = (ideal part) + remainder.

    ``cofactor_vectors`` holds, per generator, the coefficient vector of
    the degree k - deg(f) cofactor; ``coefficients`` are the inner
    products against the accepted left singular vectors, and
    ``scaled_coefficients`` the column-space solution they induce.
    """

    coefficients: np.ndarray
    scaled_coefficients: np.ndarray
    cofactor_vectors: tuple[np.ndarray, ...]
    remainder: HomogeneousForm


@dataclass(frozen=True, eq=False)
class ReductionResult:
    quotients: tuple[Polynomial, ...]
    remainder: Polynomial
    reconstruction_residual: float
    remainder_norms_per_degree: tuple[tuple[int, float], ...]


def _decompose(g_vec: np.ndarray, c_matrix: MacaulayMatrix, svd_res, rank: int) -> HomogeneousDecomposition:
    u1 = svd_res.U[:, :rank]
    c = u1.T @ g_vec
    remainder_vec = g_vec - u1 @ c
    if rank:
        ctilde = svd_res.Vh[:rank].T @ (c / svd_res.singular_values[:rank])
    else:
        ctilde = np.zeros(c_matrix.layout.total_cols)
    pieces = tuple(
        ctilde[b.offset : b.offset + b.width].copy() for b in c_matrix.layout.blocks
    )
    form = HomogeneousForm(c_matrix.layout.num_vars, c_matrix.degree, remainder_vec)
    return HomogeneousDecomposition(c, ctilde, pieces, form)


def decompose_homogeneous(
    g: HomogeneousForm, c_matrix: MacaulayMatrix, policy: RankPolicy
) -> HomogeneousDecomposition:
    """Split a homogeneous form along the column span of the degree matrix."""
    if g.degree != c_matrix.degree:
        raise ValueError(f"form degree {g.degree} does not match matrix degree {c_matrix.degree}")
    res = svd(c_matrix.matrix)
    rank = numerical_rank(res.singular_values, policy, *c_matrix.matrix.shape)
    return _decompose(np.asarray(g.coeffs, dtype=float), c_matrix, res, rank)


class Reducer:
    """Reduction against a fixed system, with per-degree SVDs cached.

    The cache belongs to one system version; build a fresh Reducer after
    the generator list changes.
    """

    def __init__(self, system: PolynomialSystem, policy: RankPolicy | None = None):
        self.system = system
        self.policy = policy or RankPolicy()
        self._cache: dict[int, tuple[MacaulayMatrix, object, int]] = {}

    def _degree_data(self, k: int):
        hit = self._cache.get(k)
        if hit is None:
            c_matrix = build_macaulay(self.system, k)
            if c_matrix.layout.total_cols == 0:
                hit = (c_matrix, None, 0)
            else:
                res = svd(c_matrix.matrix)
                rank = numerical_rank(res.singular_values, self.policy, *c_matrix.matrix.shape)
                hit = (c_matrix, res, rank)
            self._cache[k] = hit
        return hit

    def reduce(self, p: Polynomial) -> ReductionResult:
        if p.num_vars != self.system.num_vars:
            raise ValueError("polynomial and system have different variable counts")
        input_norm = p.norm2()
        quotients = [Polynomial.zero(p.num_vars) for _ in self.system.generators]
        remainder = Polynomial.zero(p.num_vars)
        norms: list[tuple[int, float]] = []
        work = p
        while not work.is_zero():
            k = work.degree
            g_vec = work.coefficient_vector(k)
            if not np.isfinite(g_vec).all():
                raise NonFiniteMatrixError("non-finite coefficients during reduction")
            c_matrix, svd_res, rank = self._degree_data(k)
            if c_matrix.layout.total_cols == 0:
                # nothing of this degree in the span: the whole form is remainder
                lead = HomogeneousForm(p.num_vars, k, g_vec).to_polynomial()
                remainder = remainder + lead
                norms.append((k, lead.norm2()))
                work = work.truncate_below(k)
                continue
            dec = _decompose(g_vec, c_matrix, svd_res, rank)
            rem_poly = dec.remainder.to_polynomial()
            remainder = remainder + rem_poly
            norms.append((k, dec.remainder.norm2()))
            update = work - rem_poly
            for i, (g, piece) in enumerate(zip(self.system.generators, dec.cofactor_vectors)):
                if piece.size == 0 or not piece.any():
                    continue
                shift_degree = k - g.degree
                cof = Polynomial(
                    dict(zip(monomials_of_degree(p.num_vars, shift_degree), piece)),
                    p.num_vars,
                )
                quotients[i] = quotients[i] + cof
                update = update - cof * g
            # the degree-k part cancels by construction; drop its float dust
            work = update.truncate_below(k)

        threshold = self.policy.epsilon_machine * input_norm
        if threshold > 0:
            quotients = [q.prune(threshold) for q in quotients]
            remainder = remainder.prune(threshold)

        recon = p
        for q, g in zip(quotients, self.system.generators):
            recon = recon - q * g
        recon = recon - remainder
        return ReductionResult(tuple(quotients), remainder, recon.norm2(), tuple(norms))


def reduce_polynomial(
    p: Polynomial, system: PolynomialSystem, policy: RankPolicy | None = None
) -> ReductionResult:
    """One-shot reduction; use a Reducer to amortise SVDs across calls."""
    return Reducer(system, policy).reduce(p)
