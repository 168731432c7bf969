"""Exact rational reference computations for validating the float pipeline.

Rank, nullspace, echelon pivots and Hilbert-function values are computed
over the rationals with fraction-free integer elimination (rows are
cleared of denominators, combined by cross-multiplication, and reduced
by their content).  No tolerance appears anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import gcd, mpq, mpz

from .macaulay import BlockLayout
from .poly import PolynomialSystem, dim_homogeneous, monomials_of_degree

Rational = mpq


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[mpq, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry grid does not match the declared shape")

    @classmethod
    def from_rows(cls, rows) -> "RationalMatrix":
        data = tuple(tuple(mpq(x) for x in row) for row in rows)
        ncols = len(data[0]) if data else 0
        return cls(len(data), ncols, data)

    def transpose(self) -> "RationalMatrix":
        data = tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols))
        return RationalMatrix(self.cols, self.rows, data)


def _clear_denominators(nz: dict[int, mpq]) -> dict[int, mpz]:
    denom = mpz(1)
    for x in nz.values():
        denom = denom * x.denominator // gcd(denom, x.denominator)
    return {j: mpz(x * denom) for j, x in nz.items()}


def _sparse_rows(m: RationalMatrix) -> list[dict[int, mpz]]:
    """Rows as integer dicts, denominators cleared row by row."""
    out = []
    for row in m.entries:
        nz = {j: x for j, x in enumerate(row) if x != 0}
        if nz:
            out.append(_clear_denominators(nz))
    return out


def _row_reduce_content(row: dict[int, mpz]) -> dict[int, mpz]:
    g = mpz(0)
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {j: v // g for j, v in row.items()}
    return row


def _eliminate(rows: list[dict[int, mpz]], ncols: int):
    """Forward elimination with pivot columns scanned left to right.

    Returns the pivot list as (column, echelon row) pairs.  Within a
    column the sparsest candidate row is chosen; column order is fixed
    so the pivot set matches the reduced echelon form.
    """
    active = [r for r in rows if r]
    pivots: list[tuple[int, dict[int, mpz]]] = []
    for c in range(ncols):
        best = None
        for idx, row in enumerate(active):
            if c in row and (best is None or len(row) < len(active[best])):
                best = idx
        if best is None:
            continue
        pivrow = active.pop(best)
        piv = pivrow[c]
        pivots.append((c, pivrow))
        nxt = []
        for row in active:
            q = row.get(c)
            if q is None:
                nxt.append(row)
                continue
            combined: dict[int, mpz] = {j: piv * v for j, v in row.items()}
            for j, v in pivrow.items():
                w = combined.get(j, mpz(0)) - q * v
                if w:
                    combined[j] = w
                else:
                    combined.pop(j, None)
            combined.pop(c, None)
            if combined:
                nxt.append(_row_reduce_content(combined))
        active = nxt
    return pivots


def _coerce(m) -> RationalMatrix:
    if isinstance(m, RationalMatrix):
        return m
    return RationalMatrix.from_rows(m)


def exact_rank(m) -> int:
    """Rank over the rationals."""
    mat = _coerce(m)
    return len(_eliminate(_sparse_rows(mat), mat.cols))


def exact_pivot_columns(m) -> list[int]:
    """Pivot columns of the exact row echelon form, in ascending order."""
    mat = _coerce(m)
    return sorted(c for c, _ in _eliminate(_sparse_rows(mat), mat.cols))


def exact_nullspace(m) -> list[list[mpq]]:
    """Basis of the exact nullspace, one vector per free column."""
    mat = _coerce(m)
    pivots = _eliminate(_sparse_rows(mat), mat.cols)
    pivot_cols = {c for c, _ in pivots}
    basis = []
    for free in range(mat.cols):
        if free in pivot_cols:
            continue
        x: dict[int, mpq] = {free: mpq(1)}
        for c, row in reversed(pivots):
            s = mpq(0)
            for j, v in row.items():
                if j != c and j in x:
                    s += v * x[j]
            if s:
                x[c] = -s / row[c]
        basis.append([x.get(j, mpq(0)) for j in range(mat.cols)])
    return basis


def _macaulay_sparse_cols(system: PolynomialSystem, k: int) -> tuple[dict[int, dict[int, mpq]], int, int]:
    """Exact degree-k shifted-leading-form matrix as column dicts.

    Returns (columns, nrows, ncols); columns map a column index to its
    nonzero {row: value} entries.
    """
    n = system.num_vars
    layout = BlockLayout.for_system(system, k)
    row_index = {a: i for i, a in enumerate(monomials_of_degree(n, k))}
    cols: dict[int, dict[int, mpq]] = {}
    for b in layout.blocks:
        if b.width == 0:
            continue
        g = system.generators[b.generator]
        lead_terms = [(a, mpq(c)) for a, c in g.terms.items() if sum(a) == g.degree]
        for j, alpha in enumerate(monomials_of_degree(n, b.shift_degree)):
            col = b.offset + j
            for beta, c in lead_terms:
                row = row_index[tuple(x + y for x, y in zip(alpha, beta))]
                cols.setdefault(col, {})[row] = c
    return cols, dim_homogeneous(n, k), layout.total_cols


def exact_macaulay(system: PolynomialSystem, k: int) -> RationalMatrix:
    """Dense exact copy of the degree-k matrix (small systems only)."""
    cols, nrows, ncols = _macaulay_sparse_cols(system, k)
    dense = [[mpq(0)] * ncols for _ in range(nrows)]
    for c, entries in cols.items():
        for r, v in entries.items():
            dense[r][c] = v
    return RationalMatrix(nrows, ncols, tuple(tuple(r) for r in dense))


def exact_macaulay_rank(system: PolynomialSystem, k: int) -> int:
    """Rank of the exact degree-k matrix without densifying it."""
    cols, _, ncols = _macaulay_sparse_cols(system, k)
    rows: dict[int, dict[int, mpq]] = {}
    for c, entries in cols.items():
        for r, v in entries.items():
            rows.setdefault(r, {})[c] = v
    sparse = [_clear_denominators(rows[r]) for r in sorted(rows)]
    return len(_eliminate(sparse, ncols))


def exact_hilbert_function(system: PolynomialSystem, k: int) -> int:
    """Dimension of degree-k polynomials modulo the shifted leading forms."""
    if k < 0:
        raise ValueError("degree must be non-negative")
    return dim_homogeneous(system.num_vars, k) - exact_macaulay_rank(system, k)


def exact_leading_monomials(system: PolynomialSystem, k: int) -> set[tuple[int, ...]]:
    """Degree-k leading monomials via exact elimination on the transpose."""
    cols, nrows, _ = _macaulay_sparse_cols(system, k)
    t_rows = [_clear_denominators(cols[c]) for c in sorted(cols)]
    pivots = _eliminate(t_rows, nrows)
    mons = monomials_of_degree(system.num_vars, k)
    return {mons[c] for c, _ in pivots}
