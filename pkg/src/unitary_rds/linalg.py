"""Exact rational linear algebra on small dense matrices.

A thin wrapper over sympy's DomainMatrix on QQ (gmpy-backed), returning
Fractions.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix


def _dm(rows: Sequence[Sequence], ncols: int | None = None) -> DomainMatrix:
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else (ncols or 0)
    data = []
    for r in rows:
        out = []
        for x in r:
            f = Fraction(x)
            out.append(QQ(f.numerator, f.denominator))
        data.append(out)
    return DomainMatrix(data, (len(rows), ncols), QQ)


def _to_fraction(x) -> Fraction:
    return Fraction(int(QQ.numer(x)), int(QQ.denom(x)))


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return _dm(rows).rank()


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of {v : rows v = 0}."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    basis = _dm(rows).nullspace().to_Matrix()
    return [tuple(_to_fraction(QQ.convert(basis[i, j])) for j in range(ncols)) for i in range(basis.rows)]


def solve(rows: Sequence[Sequence], rhs: Sequence) -> tuple[Fraction, ...]:
    """The unique solution of rows v = rhs; raises ValueError if there is none or many."""
    ncols = len(rows[0])
    aug = _dm([list(r) + [b] for r, b in zip(rows, rhs)])
    reduced, pivots = aug.rref()
    if ncols in pivots:
        raise ValueError("inconsistent linear system")
    if len(pivots) != ncols:
        raise ValueError("linear system has no unique solution")
    dense = reduced.to_list()
    return tuple(_to_fraction(dense[i][ncols]) for i in range(ncols))


def coordinates(base: Sequence[Sequence], vec: Sequence) -> tuple[Fraction, ...]:
    """Coefficients of vec in the linearly independent family ``base``."""
    if rank(base) != len(base):
        raise ValueError("family is linearly dependent")
    cols = [[base[k][i] for k in range(len(base))] for i in range(len(vec))]
    return solve(cols, vec)


def left_inverse(base: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    """Rows L with L B = 1, where B has the (independent) family ``base`` as columns."""
    if rank(base) != len(base):
        raise ValueError("family is linearly dependent")
    bt = _dm(base)
    linv = (bt * bt.transpose()).inv() * bt
    return [tuple(_to_fraction(x) for x in row) for row in linv.to_list()]
