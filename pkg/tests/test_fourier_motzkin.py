from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from unitary_rds.fourier_motzkin import Feasible, Infeasible, check_point, solve_homogeneous

row = st.lists(st.integers(-2, 2), min_size=3, max_size=3)


def _combination_vanishes(mult, rows):
    total = [Fraction(0)] * len(rows[0])
    for c, r in zip(mult, rows):
        total = [t + c * x for t, x in zip(total, r)]
    return all(t == 0 for t in total)


def test_simple_infeasible():
    # v1 = v2, v3 = v4, v2 >= v3 forces v1 >= v3
    eqs = [(1, -1, 0, 0), (0, 0, 1, -1)]
    ineqs = [(0, 1, -1, 0)]
    out = solve_homogeneous(4, eqs, ineqs, [(-1, 0, 1, 0)])
    assert isinstance(out, Infeasible)
    assert _combination_vanishes(out.multipliers, eqs + ineqs + [(-1, 0, 1, 0)])


def test_simple_feasible_witness():
    ineqs = [(1, 0, -1, 0), (0, 1, 0, -1)]
    strict = [(-1, 1, 0, 0)]
    out = solve_homogeneous(4, [], ineqs, strict)
    assert isinstance(out, Feasible)
    assert check_point(out.point, [], ineqs, strict)


def test_zero_strict_row_is_infeasible():
    out = solve_homogeneous(2, [], [], [(0, 0)])
    assert isinstance(out, Infeasible) and out.multipliers == (1,)


def _box_feasible(eqs, ineqs, strict, bound=3):
    pts = np.array(list(itertools.product(range(-bound, bound + 1), repeat=3)))
    mask = np.ones(len(pts), dtype=bool)
    for r in eqs:
        mask &= pts @ np.array(r) == 0
    for r in ineqs:
        mask &= pts @ np.array(r) >= 0
    for r in strict:
        mask &= pts @ np.array(r) > 0
    return bool(mask.any())


@settings(max_examples=150, deadline=None)
@given(st.lists(row, max_size=1), st.lists(row, max_size=3), st.lists(row, min_size=1, max_size=2))
def test_dichotomy_and_certificates(eqs, ineqs, strict):
    out = solve_homogeneous(3, eqs, ineqs, strict)
    if isinstance(out, Feasible):
        assert check_point(out.point, eqs, ineqs, strict)
    else:
        mult = out.multipliers
        ne, ni = len(eqs), len(ineqs)
        assert all(x >= 0 for x in mult[ne:])
        assert any(x > 0 for x in mult[ne + ni :])
        assert _combination_vanishes(mult, [*eqs, *ineqs, *strict])
        # an infeasible system has no points at all, in particular none in the box
        assert not _box_feasible(eqs, ineqs, strict)
