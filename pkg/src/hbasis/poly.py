"""Sparse multivariate polynomials under the graded lexicographic order.

A monomial is a tuple of non-negative exponents, one per variable; a
polynomial maps such tuples to float coefficients.  Monomials of a fixed
total degree are enumerated in descending graded-lex order (x1 beats x2
beats ...), and index 0 is always the graded-lex greatest monomial, so
that echelon pivots land on leading monomials directly.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cmp_to_key, lru_cache
from typing import Iterable, Mapping

import numpy as np

MultiIndex = tuple[int, ...]


def total_degree(alpha: MultiIndex) -> int:
    """Sum of the exponents of a multiindex."""
    return sum(alpha)


def graded_lex_compare(a: MultiIndex, b: MultiIndex) -> int:
    """Compare two multiindices, degree first, then lexicographically.

    Returns -1, 0 or 1.  Earlier variables have higher lexicographic
    priority, so (1,1) < (2,0) while (0,3) > (2,0).
    """
    if len(a) != len(b):
        raise ValueError(f"multiindex lengths differ: {len(a)} vs {len(b)}")
    da, db = sum(a), sum(b)
    if da != db:
        return -1 if da < db else 1
    if a == b:
        return 0
    return -1 if a < b else 1


def dim_homogeneous(n: int, k: int) -> int:
    """Number of monomials of total degree k in n variables.

    Returns 0 for negative k (the degree-k slice is the zero space).
    """
    if n < 1:
        raise ValueError("need at least one variable")
    if k < 0:
        return 0
    return math.comb(k + n - 1, n - 1)


@lru_cache(maxsize=None)
def monomials_of_degree(n: int, k: int) -> tuple[MultiIndex, ...]:
    """All degree-k multiindices over n variables, graded-lex descending."""
    if k < 0:
        return ()
    if n == 1:
        return ((k,),)
    out = []
    for first in range(k, -1, -1):
        for rest in monomials_of_degree(n - 1, k - first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _rank_map(n: int, k: int) -> dict[MultiIndex, int]:
    return {alpha: i for i, alpha in enumerate(monomials_of_degree(n, k))}


def monomial_rank(alpha: MultiIndex) -> int:
    """Position of a multiindex inside its degree slice (0 = greatest)."""
    return _rank_map(len(alpha), sum(alpha))[alpha]


def monomial_unrank(n: int, k: int, idx: int) -> MultiIndex:
    """Inverse of monomial_rank for the degree-k slice over n variables."""
    mons = monomials_of_degree(n, k)
    if not 0 <= idx < len(mons):
        raise IndexError(f"monomial index {idx} out of range for n={n}, k={k}")
    return mons[idx]


class Polynomial:
    """Sparse polynomial with float coefficients.

    Immutable by convention: never mutate ``terms`` after construction.
    Coefficients that are exactly zero are dropped; thresholding against
    small-but-nonzero values belongs to the callers that know a scale.
    """

    __slots__ = ("terms", "num_vars")

    def __init__(self, terms: Mapping[MultiIndex, float], num_vars: int):
        clean: dict[MultiIndex, float] = {}
        for alpha, c in terms.items():
            if len(alpha) != num_vars:
                raise ValueError(f"exponent tuple {alpha} has wrong length for {num_vars} variables")
            if any(e < 0 for e in alpha):
                raise ValueError(f"negative exponent in {alpha}")
            c = float(c)
            if c != 0.0:
                clean[tuple(int(e) for e in alpha)] = c
        self.terms = clean
        self.num_vars = num_vars

    @classmethod
    def zero(cls, num_vars: int) -> "Polynomial":
        return cls({}, num_vars)

    @classmethod
    def constant(cls, num_vars: int, value: float) -> "Polynomial":
        return cls({(0,) * num_vars: value}, num_vars)

    @classmethod
    def variable(cls, num_vars: int, index: int) -> "Polynomial":
        alpha = [0] * num_vars
        alpha[index] = 1
        return cls({tuple(alpha): 1.0}, num_vars)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(a) for a in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient_norm(self, order: str = "l2") -> float:
        """Norm of the coefficient vector: 'l1', 'l2' or 'linf'."""
        vals = self.terms.values()
        if order == "l2":
            return math.sqrt(sum(c * c for c in vals))
        if order == "l1":
            return sum(abs(c) for c in vals)
        if order == "linf":
            return max((abs(c) for c in vals), default=0.0)
        raise ValueError(f"unknown norm {order!r}")

    def norm2(self) -> float:
        return self.coefficient_norm("l2")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_compatible(other)
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out.get(a, 0.0) + c
        return Polynomial(out, self.num_vars)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check_compatible(other)
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out.get(a, 0.0) - c
        return Polynomial(out, self.num_vars)

    def __neg__(self) -> "Polynomial":
        return Polynomial({a: -c for a, c in self.terms.items()}, self.num_vars)

    def scale(self, factor: float) -> "Polynomial":
        return Polynomial({a: c * factor for a, c in self.terms.items()}, self.num_vars)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check_compatible(other)
        out: dict[MultiIndex, float] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                key = tuple(x + y for x, y in zip(a, b))
                out[key] = out.get(key, 0.0) + ca * cb
        return Polynomial(out, self.num_vars)

    def truncate_below(self, k: int) -> "Polynomial":
        """Keep only the terms of total degree strictly less than k."""
        return Polynomial({a: c for a, c in self.terms.items() if sum(a) < k}, self.num_vars)

    def prune(self, threshold: float) -> "Polynomial":
        """Drop terms with |coefficient| below the threshold."""
        return Polynomial({a: c for a, c in self.terms.items() if abs(c) >= threshold}, self.num_vars)

    def coefficient_vector(self, k: int) -> np.ndarray:
        """Degree-k coefficients over the graded-lex descending monomial basis."""
        v = np.zeros(dim_homogeneous(self.num_vars, k))
        idx = _rank_map(self.num_vars, k)
        for a, c in self.terms.items():
            if sum(a) == k:
                v[idx[a]] = c
        return v

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.num_vars == other.num_vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.num_vars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        names = tuple(f"x{i + 1}" for i in range(self.num_vars))
        return f"Polynomial({format_polynomial(self, names)!r})"

    def _check_compatible(self, other: "Polynomial") -> None:
        if self.num_vars != other.num_vars:
            raise ValueError("polynomials live in different variable counts")


@dataclass(frozen=True, eq=False)
class HomogeneousForm:
    """Coefficient vector of a homogeneous polynomial of a fixed degree."""

    num_vars: int
    degree: int
    coeffs: np.ndarray

    def __post_init__(self):
        expected = dim_homogeneous(self.num_vars, self.degree)
        if len(self.coeffs) != expected:
            raise ValueError(f"coefficient vector has length {len(self.coeffs)}, expected {expected}")

    def to_polynomial(self) -> Polynomial:
        mons = monomials_of_degree(self.num_vars, self.degree)
        return Polynomial({a: c for a, c in zip(mons, self.coeffs)}, self.num_vars)

    def norm2(self) -> float:
        return float(np.linalg.norm(self.coeffs))


def leading_form(p: Polynomial) -> HomogeneousForm:
    """Highest-degree homogeneous component of a nonzero polynomial."""
    if p.is_zero():
        raise ValueError("zero polynomial has no leading form")
    k = p.degree
    return HomogeneousForm(p.num_vars, k, p.coefficient_vector(k))


def homogeneous_components(p: Polynomial) -> list[HomogeneousForm]:
    """All nonzero homogeneous components, in decreasing degree.

    Pure re-bucketing: coefficients are copied, never recombined, so the
    components sum back to the input bit for bit.
    """
    buckets: dict[int, dict[MultiIndex, float]] = {}
    for a, c in p.terms.items():
        buckets.setdefault(sum(a), {})[a] = c
    out = []
    for k in sorted(buckets, reverse=True):
        v = np.zeros(dim_homogeneous(p.num_vars, k))
        idx = _rank_map(p.num_vars, k)
        for a, c in buckets[k].items():
            v[idx[a]] = c
        out.append(HomogeneousForm(p.num_vars, k, v))
    return out


def multiply_monomial(p: Polynomial, alpha: MultiIndex) -> Polynomial:
    """Shift every exponent of p by alpha; coefficients are untouched."""
    if len(alpha) != p.num_vars:
        raise ValueError("shift multiindex has wrong length")
    return Polynomial(
        {tuple(a + b for a, b in zip(term, alpha)): c for term, c in p.terms.items()},
        p.num_vars,
    )


@dataclass(frozen=True)
class PolynomialSystem:
    """Ordered, immutable list of nonzero generators in a common ring."""

    generators: tuple[Polynomial, ...]
    num_vars: int

    def __post_init__(self):
        if not self.generators:
            raise ValueError("system needs at least one generator")
        for i, g in enumerate(self.generators):
            if g.is_zero():
                raise ValueError(f"generator {i} is the zero polynomial")
            if g.num_vars != self.num_vars:
                raise ValueError(f"generator {i} has {g.num_vars} variables, expected {self.num_vars}")

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(g.degree for g in self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def append(self, p: Polynomial) -> "PolynomialSystem":
        return PolynomialSystem(self.generators + (p,), self.num_vars)


class PolynomialSyntaxError(ValueError):
    """Parse failure; carries the character position of the offence."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN = re.compile(
    r"\s*(?:(?P<number>\d+\.?\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*^]))"
)


def _tokenize(text: str):
    pos, tokens = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise PolynomialSyntaxError(f"unexpected character {stripped[0]!r}", pos + (len(text[pos:]) - len(stripped)))
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


def parse_polynomial(text: str, variables: Iterable[str]) -> Polynomial:
    """Parse a polynomial expression over the named variables.

    Terms are signed products of an optional numeric coefficient and
    variable powers, joined with explicit '*'; exponents use '^'.
    A term may also be a bare number (constant term).
    """
    names = list(variables)
    n = len(names)
    var_index = {v: i for i, v in enumerate(names)}
    tokens = _tokenize(text)
    if not tokens:
        raise PolynomialSyntaxError("empty polynomial", 0)

    terms: dict[MultiIndex, float] = {}
    i = 0

    def expect_factor(i: int, exps: list[int]) -> int:
        kind, value, pos = tokens[i]
        if kind != "name":
            raise PolynomialSyntaxError(f"expected a variable, got {value!r}", pos)
        if value not in var_index:
            raise PolynomialSyntaxError(f"unknown variable {value!r}", pos)
        j = var_index[value]
        i += 1
        power = 1
        if i < len(tokens) and tokens[i][:2] == ("op", "^"):
            i += 1
            if i >= len(tokens) or tokens[i][0] != "number":
                raise PolynomialSyntaxError("expected an exponent after '^'", tokens[i - 1][2])
            kind2, value2, pos2 = tokens[i]
            if not value2.isdigit() or int(value2) < 1:
                raise PolynomialSyntaxError(f"exponent must be a positive integer, got {value2!r}", pos2)
            power = int(value2)
            i += 1
        exps[j] += power
        return i

    while i < len(tokens):
        sign = 1.0
        kind, value, pos = tokens[i]
        if kind == "op" and value in "+-":
            sign = -1.0 if value == "-" else 1.0
            i += 1
            if i >= len(tokens):
                raise PolynomialSyntaxError("dangling sign", pos)
        coeff = sign
        exps = [0] * n
        kind, value, pos = tokens[i]
        if kind == "number":
            coeff *= float(value)
            i += 1
            while i < len(tokens) and tokens[i][:2] == ("op", "*"):
                i += 1
                if i >= len(tokens):
                    raise PolynomialSyntaxError("dangling '*'", tokens[i - 1][2])
                i = expect_factor(i, exps)
        elif kind == "name":
            i = expect_factor(i, exps)
            while i < len(tokens) and tokens[i][:2] == ("op", "*"):
                i += 1
                if i >= len(tokens):
                    raise PolynomialSyntaxError("dangling '*'", tokens[i - 1][2])
                i = expect_factor(i, exps)
        else:
            raise PolynomialSyntaxError(f"expected a term, got {value!r}", pos)

        key = tuple(exps)
        terms[key] = terms.get(key, 0.0) + coeff

        if i < len(tokens):
            kind, value, pos = tokens[i]
            if kind != "op" or value not in "+-":
                raise PolynomialSyntaxError(f"expected '+' or '-' between terms, got {value!r}", pos)

    return Polynomial(terms, n)


def format_polynomial(p: Polynomial, variables: Iterable[str]) -> str:
    """Render a polynomial in the input grammar, graded-lex descending."""
    names = list(variables)
    if p.is_zero():
        return "0"
    order = sorted(p.terms, key=cmp_to_key(graded_lex_compare), reverse=True)
    pieces = []
    for idx, alpha in enumerate(order):
        c = p.terms[alpha]
        mag = abs(c)
        factors = []
        for name, e in zip(names, alpha):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if not factors or mag != 1.0:
            factors.insert(0, repr(mag))
        body = "*".join(factors)
        if idx == 0:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(pieces)
