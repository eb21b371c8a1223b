"""Exact matrix plumbing over sympy's DomainMatrix.

Rows are plain sequences of ring values; conversion to and from sympy domain
elements happens here so the services never touch domain objects.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Any, Sequence

import sympy
from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form

from mzlab.rings import CoeffRing, IntegerRing, PrimeField, RationalField

logger = logging.getLogger(__name__)

Rows = list[list[Any]]

_LAMBDA = sympy.Symbol("lam")


def field_of(ring: CoeffRing) -> CoeffRing:
    """Field in which spans of ``ring``-valued vectors are taken."""
    if isinstance(ring, IntegerRing):
        return RationalField()
    return ring


def to_dm(rows: Sequence[Sequence[Any]], ring: CoeffRing, ncols: int) -> DomainMatrix:
    K = ring.domain()
    data = [[ring.to_domain(v) for v in row] for row in rows]
    return DomainMatrix(data, (len(data), ncols), K)


def from_dm(dm: DomainMatrix, ring: CoeffRing) -> Rows:
    return [[ring.from_domain(e) for e in row] for row in dm.to_list()]


def rref(rows: Sequence[Sequence[Any]], ring: CoeffRing, ncols: int) -> tuple[Rows, tuple[int, ...]]:
    """Nonzero rows of the reduced row echelon form, with their pivot columns."""
    if not rows:
        return [], ()
    reduced, pivots = to_dm(rows, ring, ncols).rref()
    basis = from_dm(reduced, ring)[: len(pivots)]
    return basis, tuple(pivots)


def rank(rows: Sequence[Sequence[Any]], ring: CoeffRing, ncols: int) -> int:
    if not rows:
        return 0
    return to_dm(rows, ring, ncols).rank()


def nullspace(rows: Sequence[Sequence[Any]], ring: CoeffRing, ncols: int) -> Rows:
    """Basis (as rows) of {v : M v = 0}."""
    if not rows:
        return [[ring.one() if i == j else ring.zero() for j in range(ncols)] for i in range(ncols)]
    null = to_dm(rows, ring, ncols).nullspace()
    return from_dm(null, ring)


def transpose(rows: Sequence[Sequence[Any]], ncols: int) -> Rows:
    return [[row[j] for row in rows] for j in range(ncols)]


def matmul(a: Sequence[Sequence[Any]], b: Sequence[Sequence[Any]], ring: CoeffRing) -> Rows:
    if not a or not b:
        return []
    return from_dm(to_dm(a, ring, len(b)) * to_dm(b, ring, len(b[0])), ring)


def identity(n: int, ring: CoeffRing) -> Rows:
    return [[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)]


def matpow(a: Sequence[Sequence[Any]], k: int, ring: CoeffRing) -> Rows:
    n = len(a)
    if k == 0:
        return identity(n, ring)
    return from_dm(to_dm(a, ring, n) ** k, ring)


def column_space(rows: Sequence[Sequence[Any]], ring: CoeffRing, ncols: int) -> tuple[Rows, tuple[int, ...]]:
    """RREF basis of the span of the columns of the matrix."""
    return rref(transpose(rows, ncols), ring, len(rows))


def charpoly(rows: Sequence[Sequence[Any]], ring: CoeffRing) -> list[Any]:
    n = len(rows)
    return [ring.from_domain(c) for c in to_dm(rows, ring, n).charpoly()]


def factor_charpoly(coeffs: Sequence[Any], ring: CoeffRing) -> tuple[list[Any], list[int]]:
    """Roots (with repetition dropped) and the degree pattern of irreducible factors."""
    if isinstance(ring, PrimeField):
        p = ring.p
        poly = sympy.Poly([int(c) for c in coeffs], _LAMBDA, modulus=p)
    else:
        poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in coeffs], _LAMBDA, domain=QQ)
    _, factors = poly.factor_list()
    degrees = sorted(f.degree() for f, _ in factors)
    roots: list[Any] = []
    for f, _ in factors:
        if f.degree() != 1:
            continue
        a, b = f.all_coeffs()
        if isinstance(ring, PrimeField):
            roots.append(-int(b) * pow(int(a), -1, ring.p) % ring.p)
        else:
            root = -sympy.Rational(b) / sympy.Rational(a)
            roots.append(Fraction(int(root.p), int(root.q)))
    logger.debug("charpoly factor degrees %s", degrees)
    return sorted(set(roots)), degrees


def hnf_basis(vectors: Sequence[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    """Hermite normal form basis of the Z-span of ``vectors``.

    Generators go in as columns; the nonzero HNF columns come back as basis
    vectors ordered by increasing pivot row (the lowest nonzero entry).
    """
    gens = [v for v in vectors if any(v)]
    if not gens:
        return []
    cols = [[ZZ(v[i]) for v in gens] for i in range(dim)]
    W = hermite_normal_form(DomainMatrix(cols, (dim, len(gens)), ZZ))
    data = W.to_list()
    ncols = W.shape[1]
    return [tuple(int(data[i][j]) for i in range(dim)) for j in range(ncols)]


def lattice_residual(basis: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    """Reduce ``v`` against an HNF basis; zero residual means membership."""
    residual = list(v)
    for column in reversed(basis):
        pivot_row = max(i for i, a in enumerate(column) if a)
        q, rem = divmod(residual[pivot_row], column[pivot_row])
        if rem:
            return residual
        if q:
            residual = [a - q * b for a, b in zip(residual, column)]
    return residual


def inverse(rows: Sequence[Sequence[Any]], ring: CoeffRing) -> Rows:
    n = len(rows)
    return from_dm(to_dm(rows, ring, n).inv(), ring)
