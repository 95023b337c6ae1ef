"""Brute-force oracles, kept independent of the paths they check.

Nothing here calls the production routines it is meant to validate: the
Hilbert symbol oracle searches residues, the double coset oracle computes
orbits under left/right multiplication, and the cone oracle scans a box of
lattice points.
"""
from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Sequence

import numpy as np

from .root_weyl import SimpleSubset, WeylElement


def _integral_pair(a: Fraction, b: Fraction, p: int) -> tuple[int, int]:
    # clearing square denominators and square p-powers leaves the symbol unchanged
    a, b = Fraction(a), Fraction(b)
    a_int = a.numerator * a.denominator
    b_int = b.numerator * b.denominator
    out = []
    for x in (a_int, b_int):
        while x % (p * p) == 0:
            x //= p * p
        out.append(x)
    return out[0], out[1]


def hilbert_symbol_bruteforce(a, b, p: int) -> int:
    """+1 iff z^2 = a x^2 + b y^2 has a primitive solution modulo p^3.

    After reducing to v_p(a), v_p(b) in {0, 1}, a primitive solution modulo
    p^3 lifts to Q_p by Hensel's lemma (p odd), so the residue search decides
    the symbol.
    """
    if p == 2:
        raise ValueError("p = 2 is not supported")
    a_int, b_int = _integral_pair(a, b, p)
    mod = p ** 3
    r = np.arange(mod, dtype=np.int64)
    sq = (r * r) % mod
    all_squares = np.zeros(mod, dtype=bool)
    all_squares[sq] = True
    unit_squares = np.zeros(mod, dtype=bool)
    unit_squares[sq[r % p != 0]] = True
    x = r[:, None]
    y = r[None, :]
    rhs = ((a_int % mod) * sq[:, None] + (b_int % mod) * sq[None, :]) % mod
    xy_primitive = (x % p != 0) | (y % p != 0)
    ok = np.where(xy_primitive, all_squares[rhs], unit_squares[rhs])
    return 1 if bool(ok.any()) else -1


def double_coset_partition(theta: SimpleSubset, omega: SimpleSubset) -> list[frozenset[WeylElement]]:
    """All double cosets W_Theta w W_Omega, by orbit closure over all of W_0."""
    import itertools

    m = theta.m
    left = [WeylElement.simple_reflection(m, i) for i in theta.sorted()]
    right = [WeylElement.simple_reflection(m, i) for i in omega.sorted()]
    remaining = {WeylElement(p) for p in itertools.permutations(range(m))}
    cosets = []
    while remaining:
        start = min(remaining)
        orbit = {start}
        queue = deque([start])
        while queue:
            w = queue.popleft()
            for s in left:
                x = s * w
                if x not in orbit:
                    orbit.add(x)
                    queue.append(x)
            for s in right:
                x = w * s
                if x not in orbit:
                    orbit.add(x)
                    queue.append(x)
        remaining -= orbit
        cosets.append(frozenset(orbit))
    return cosets


def double_coset_of(w: WeylElement, theta: SimpleSubset, omega: SimpleSubset) -> frozenset[WeylElement]:
    m = theta.m
    left = [WeylElement.simple_reflection(m, i) for i in theta.sorted()]
    right = [WeylElement.simple_reflection(m, i) for i in omega.sorted()]
    orbit = {w}
    queue = deque([w])
    while queue:
        u = queue.popleft()
        for x in [s * u for s in left] + [u * s for s in right]:
            if x not in orbit:
                orbit.add(x)
                queue.append(x)
    return frozenset(orbit)


def box_points(m: int, bound: int) -> np.ndarray:
    """All integer vectors in [-bound, bound]^m, one per row."""
    axis = np.arange(-bound, bound + 1, dtype=np.int64)
    grids = np.meshgrid(*([axis] * m), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def cone_mask(
    points: np.ndarray,
    equalities: Sequence[Sequence[int]],
    inequalities: Sequence[Sequence[int]],
) -> np.ndarray:
    mask = np.ones(len(points), dtype=bool)
    if len(equalities):
        mask &= (points @ np.asarray(equalities, dtype=np.int64).T == 0).all(axis=1)
    if len(inequalities):
        mask &= (points @ np.asarray(inequalities, dtype=np.int64).T >= 0).all(axis=1)
    return mask


def strict_cone_mask(
    points: np.ndarray,
    equalities: Sequence[Sequence[int]],
    inequalities: Sequence[Sequence[int]],
) -> np.ndarray:
    """Members of the cone that lie outside its lineality (exclusion) subspace."""
    mask = cone_mask(points, equalities, inequalities)
    if len(inequalities):
        pair = points @ np.asarray(inequalities, dtype=np.int64).T
        mask &= (pair != 0).any(axis=1)
    else:
        mask &= False
    return mask


def box_scan_containment(
    m: int,
    source: tuple[Sequence[Sequence[int]], Sequence[Sequence[int]]],
    target: tuple[Sequence[Sequence[int]], Sequence[Sequence[int]]],
    bound: int = 4,
) -> tuple[int, int, list[int] | None]:
    """Check source-minus-exclusion inside target-minus-exclusion on a box.

    Each cone is given as (equalities, inequalities) of integer functionals;
    the exclusion of a cone is where all of its functionals vanish.  Returns
    (points checked, violations, first violating point or None).
    """
    pts = box_points(m, bound)
    src = strict_cone_mask(pts, *source)
    tgt = strict_cone_mask(pts, *target)
    bad = src & ~tgt
    witness = pts[bad][0].tolist() if bad.any() else None
    return int(src.sum()), int(bad.sum()), witness
