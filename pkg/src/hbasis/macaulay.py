"""Block coefficient matrices of shifted leading forms, and variable shifts.

For a system F and degree k, the matrix has one row per degree-k monomial
(graded-lex descending) and one column per pair (generator i, shift
monomial of degree k - deg(f_i)); the column holds the coefficients of
the shifted leading form.  Shift matrices embed degree-k column
coordinates into degree k+1 by multiplication with a single variable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .poly import (
    MultiIndex,
    Polynomial,
    PolynomialSystem,
    dim_homogeneous,
    leading_form,
    monomial_rank,
    monomials_of_degree,
)


@dataclass(frozen=True)
class BlockInfo:
    generator: int
    shift_degree: int
    width: int
    offset: int


@dataclass(frozen=True)
class BlockLayout:
    """Column bookkeeping: which (generator, shift monomial) owns a column."""

    degree: int
    num_vars: int
    blocks: tuple[BlockInfo, ...]
    total_cols: int

    @classmethod
    def for_system(cls, system: PolynomialSystem, k: int) -> "BlockLayout":
        blocks = []
        offset = 0
        for i, g in enumerate(system.generators):
            shift_degree = k - g.degree
            width = dim_homogeneous(system.num_vars, shift_degree)
            blocks.append(BlockInfo(i, shift_degree, width, offset))
            offset += width
        return cls(k, system.num_vars, tuple(blocks), offset)

    def column_label(self, col: int) -> tuple[int, MultiIndex]:
        if not 0 <= col < self.total_cols:
            raise IndexError(f"column {col} out of range (total {self.total_cols})")
        for b in self.blocks:
            if b.offset <= col < b.offset + b.width:
                alpha = monomials_of_degree(self.num_vars, b.shift_degree)[col - b.offset]
                return b.generator, alpha
        raise IndexError(f"column {col} not covered by any block")


@dataclass(frozen=True, eq=False)
class MacaulayMatrix:
    matrix: np.ndarray
    layout: BlockLayout

    @property
    def degree(self) -> int:
        return self.layout.degree

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    @property
    def density(self) -> float:
        if self.matrix.size == 0:
            return 0.0
        return float(np.count_nonzero(self.matrix)) / self.matrix.size


def build_macaulay(system: PolynomialSystem, k: int) -> MacaulayMatrix:
    """Coefficient matrix of all degree-k shifts of the leading forms.

    Generators of degree above k contribute zero-width blocks, keeping
    block indices stable across degrees.
    """
    if k < 0:
        raise ValueError("degree must be non-negative")
    n = system.num_vars
    layout = BlockLayout.for_system(system, k)
    rows = dim_homogeneous(n, k)
    m = np.zeros((rows, layout.total_cols))
    from .poly import _rank_map  # shared monomial index cache

    row_index = _rank_map(n, k)
    for b in layout.blocks:
        if b.width == 0:
            continue
        g = system.generators[b.generator]
        lead_terms = [(a, c) for a, c in g.terms.items() if sum(a) == g.degree]
        for j, alpha in enumerate(monomials_of_degree(n, b.shift_degree)):
            col = b.offset + j
            for beta, c in lead_terms:
                m[row_index[tuple(x + y for x, y in zip(alpha, beta))], col] = c
    return MacaulayMatrix(m, layout)


def column_label(layout: BlockLayout, col: int) -> tuple[int, MultiIndex]:
    return layout.column_label(col)


@dataclass(frozen=True, eq=False)
class ShiftMatrix:
    """Sparse 0/1 matrix for multiplication by one variable.

    Maps degree-k column coordinates to degree-(k+1) coordinates; every
    source column has exactly one nonzero.  Blocks that are new at degree
    k+1 (generators of degree k+1) receive only zero rows.
    """

    variable: int
    source: BlockLayout
    target: BlockLayout
    target_rows: np.ndarray
    source_cols: np.ndarray

    def apply(self, n_matrix: np.ndarray) -> np.ndarray:
        if n_matrix.shape[0] != self.source.total_cols:
            raise ValueError(
                f"coordinate rows {n_matrix.shape[0]} do not match source layout {self.source.total_cols}"
            )
        out = np.zeros((self.target.total_cols, n_matrix.shape[1]))
        out[self.target_rows] = n_matrix[self.source_cols]
        return out


def build_shift_family(system: PolynomialSystem, k: int) -> list[ShiftMatrix]:
    """Shift matrices for every variable, from degree k to degree k+1."""
    n = system.num_vars
    source = BlockLayout.for_system(system, k)
    target = BlockLayout.for_system(system, k + 1)
    family = []
    for j in range(n):
        t_rows, s_cols = [], []
        for bs, bt in zip(source.blocks, target.blocks):
            if bs.width == 0:
                continue
            for idx, alpha in enumerate(monomials_of_degree(n, bs.shift_degree)):
                shifted = list(alpha)
                shifted[j] += 1
                t_rows.append(bt.offset + monomial_rank(tuple(shifted)))
                s_cols.append(bs.offset + idx)
        family.append(
            ShiftMatrix(j, source, target, np.asarray(t_rows, dtype=int), np.asarray(s_cols, dtype=int))
        )
    return family


def apply_extension(shifts: list[ShiftMatrix], n_basis: np.ndarray) -> np.ndarray:
    """All variable shifts of the given coordinate columns, side by side."""
    if not shifts:
        raise ValueError("need at least one shift matrix")
    q_next = shifts[0].target.total_cols
    if n_basis.shape[1] == 0:
        return np.zeros((q_next, 0))
    return np.hstack([s.apply(n_basis) for s in shifts])
