from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unitary_rds.ematrix import (
    EMatrix,
    HermitianMatrix,
    orbit_invariant,
    random_hermitian,
    random_invertible,
    random_unitary,
)
from unitary_rds.quad_arith import presets, unramified_preset


def test_constructors(cfg):
    d = cfg.d
    assert EMatrix.identity(3, d) == EMatrix.diag([1, 1, 1], d)
    j = EMatrix.antidiagonal(3, d)
    assert j @ j == EMatrix.identity(3, d)
    p = EMatrix.permutation([1, 2, 0], d)
    # e_0 goes to e_1
    assert p[1, 0] == 1 and p[0, 0] == 0
    blk = EMatrix.block_diag(EMatrix.scalar(2, 3, d), EMatrix.scalar(1, -1, d))
    assert blk == EMatrix.diag([3, 3, -1], d)
    assert blk.is_block_diagonal((2, 1)) and not j.is_block_diagonal((2, 1))


def test_inverse_and_det(cfg):
    rng = random.Random(3)
    for _ in range(20):
        g = random_invertible(rng, 3, cfg)
        assert g @ g.inverse() == EMatrix.identity(3, cfg.d)
        h = random_invertible(rng, 3, cfg)
        assert (g @ h).det() == g.det() * h.det()
    with pytest.raises(ZeroDivisionError):
        EMatrix.from_entries([[1, 2], [2, 4]], cfg.d).inverse()


def test_star_is_antimultiplicative(cfg):
    rng = random.Random(4)
    g, h = random_invertible(rng, 3, cfg), random_invertible(rng, 3, cfg)
    assert (g @ h).star() == h.star() @ g.star()
    assert g.star().star() == g


def test_hermitian_validation(cfg):
    with pytest.raises(ValueError):
        HermitianMatrix.of(EMatrix.from_entries([[1, 2], [3, 1]], cfg.d))
    sqrt_d = cfg.sqrt_d()
    x = HermitianMatrix.of(EMatrix.from_entries([[1, sqrt_d], [sqrt_d.conj(), 2]], cfg.d))
    assert x.is_hermitian()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 4))
def test_hermitian_det_in_base_field(seed, n):
    for cfg in presets(5).values():
        x = random_hermitian(random.Random(seed), n, cfg)
        assert x.det().in_base_field()


def test_orbit_invariant_identity_trivial(cfg):
    for m in (1, 2, 4):
        assert orbit_invariant(EMatrix.identity(m, cfg.d), cfg).class_id == "trivial"


def test_orbit_invariant_rejects_singular(cfg):
    with pytest.raises(ValueError):
        orbit_invariant(EMatrix.from_entries([[1, 1], [1, 1]], cfg.d), cfg)


def test_orbit_invariant_constant_on_orbits(cfg):
    rng = random.Random(5)
    for _ in range(40):
        x = random_hermitian(rng, 3, cfg)
        g = random_invertible(rng, 3, cfg, 2)
        assert orbit_invariant(x, cfg).class_id == orbit_invariant(x.act(g), cfg).class_id


def test_both_classes_occur(cfg):
    rng = random.Random(6)
    seen = {orbit_invariant(random_hermitian(rng, 2, cfg), cfg).class_id for _ in range(60)}
    assert seen == {"trivial", "nontrivial"}


def test_random_unitary_preserves_form(cfg):
    rng = random.Random(7)
    x = random_hermitian(rng, 3, cfg)
    for _ in range(10):
        h = random_unitary(rng, x, cfg)
        assert h.star() @ x @ h == x


def test_entries_are_exact():
    cfg = unramified_preset(5)
    m = EMatrix.from_entries([[Fraction(1, 3), cfg.element(0, Fraction(2, 7))], [0, 1]], cfg.d)
    assert m[0, 0] == Fraction(1, 3)
    assert m[0, 1] == cfg.element(0, Fraction(2, 7))
