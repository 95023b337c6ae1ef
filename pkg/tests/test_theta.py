from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from unitary_rds.ematrix import EMatrix, orbit_invariant, random_hermitian, random_invertible
from unitary_rds.root_weyl import PartitionShape, RootDatum, WeylElement
from unitary_rds import theta as th


def test_gamma_small_cases(cfg):
    assert th.gamma_matrix(2, cfg) == EMatrix.from_entries([[1, 1], [1, -1]], cfg.d)
    assert th.gamma_product(2, cfg) == EMatrix.diag([2, -2], cfg.d)
    g3 = th.gamma_matrix(3, cfg)
    assert [g3[1, j] for j in range(3)] == [0, 1, 0]
    assert th.gamma_product(3, cfg) == EMatrix.diag([2, 1, -2], cfg.d)
    assert th.gamma_product(4, cfg) == EMatrix.diag([2, 2, -2, -2], cfg.d)


def test_gamma_identity_all_sizes(cfg):
    for r in range(1, 9):
        g = th.gamma_matrix(r, cfg)
        assert g == g.transpose()
        assert th.gamma_product(r, cfg) == EMatrix.diag(th.expected_gamma_diagonal(r), cfg.d)
    assert th.expected_gamma_diagonal(5) == [2, 2, 1, -2, -2]
    with pytest.raises(ValueError):
        th.gamma_matrix(0, cfg)


def test_involution_on_samples(cfg):
    rng = random.Random(11)
    for x in (th.antidiagonal(3, cfg), random_hermitian(rng, 3, cfg)):
        theta = th.ThetaInvolution(x)
        for _ in range(30):
            g = random_invertible(rng, 3, cfg, 2)
            assert theta(theta(g)) == g
            h = theta.sample_fixed(rng, cfg)
            assert theta.preserves_form(h) and theta.is_fixed(h)


def test_permutation_shortcut_matches_matrix_formula(cfg):
    rng = random.Random(12)
    x = th.antidiagonal(4, cfg)
    theta = th.ThetaInvolution(x)
    for _ in range(20):
        g = random_invertible(rng, 4, cfg, 2)
        assert theta(g) == x.inverse() @ g.star().inverse() @ x


def test_theta_requires_hermitian(cfg):
    with pytest.raises(ValueError):
        th.ThetaInvolution(EMatrix.from_entries([[1, 2], [3, 4]], cfg.d))


def test_fixed_points_membership(cfg):
    rng = random.Random(12)
    theta = th.ThetaInvolution.quasi_split(4, cfg)
    assert th.fixed_points_membership(EMatrix.identity(4, cfg.d), theta)
    for _ in range(10):
        x = random_invertible(rng, 2, cfg, 2)
        assert th.fixed_points_membership(th.levi_block_fixed(x, cfg), theta)
    x = EMatrix.from_entries([[2, 0], [0, 1]], cfg.d)
    assert not th.fixed_points_membership(EMatrix.block_diag(x, x), theta)
    with pytest.raises(ValueError):
        th.fixed_points_membership(EMatrix.from_entries([[1] * 4] * 4, cfg.d), theta)


def test_theta_on_AT_examples():
    assert th.theta_on_AT_character((1, -1, 0, 0)) == (0, 0, 1, -1)
    assert th.theta_on_AT_character((1, 1, 1, 1)) == (-1, -1, -1, -1)


@given(st.lists(st.integers(-9, 9), min_size=1, max_size=8))
def test_theta_on_AT_is_involution(chi):
    assert th.theta_on_AT_character(th.theta_on_AT_character(chi)) == tuple(chi)


def test_root_action_matches_matrices(cfg):
    # theta(diag(a)) = diag(1/a reversed): the A_T rule computed with matrices
    a = [cfg.element(k, 0) for k in (2, 3, 5, 7)]
    expected = EMatrix.diag([1 / x for x in reversed(a)], cfg.d)
    assert th.theta_on_diagonal(a, cfg) == expected


def test_diagonal_split_iff_palindromic(cfg):
    for a in itertools.product([1, 2, -1], repeat=3):
        vals = [cfg.element(x, 0) for x in a]
        assert th.is_theta_split_diagonal(vals, cfg) == (a[0] == a[2])


def test_A0_is_split(cfg):
    rng = random.Random(13)
    theta = th.ThetaInvolution.quasi_split(4, cfg)
    for _ in range(10):
        s = th.A0_element([cfg.element(rng.choice([1, 2, 3, Fraction(1, 2)]), 0) for _ in range(4)], cfg)
        assert theta(s) == s.inverse()


def test_A0_root_negation():
    for m in range(2, 9):
        act = th.action_on_A0(m)
        assert all(th.theta_on_A0_root(a) == tuple(-x for x in a) for a in RootDatum(m).roots)
        assert th.theta_fixed_roots(act) == []
        assert act.is_involution()


def test_any_base_of_phi0_is_theta_base():
    act = th.action_on_A0(4)
    for p in itertools.permutations(range(4)):
        base = [WeylElement(p).act(a) for a in RootDatum(4).simple_roots]
        assert th.is_theta_base(base, act)


def test_standard_base_under_reversal():
    # the upper Borel is theta-stable for the A_T action, so Delta is not a theta-base for m >= 3
    assert th.is_theta_base(RootDatum(2).simple_roots, th.action_on_AT(2))
    for m in range(3, 7):
        assert not th.is_theta_base(RootDatum(m).simple_roots, th.action_on_AT(m))
    # coordinate order (1, 4, 2, 3) gives a theta-base for m = 4
    w = WeylElement.from_one_line([1, 4, 2, 3])
    base = [w.act(a) for a in RootDatum(4).simple_roots]
    assert th.is_theta_base(base, th.action_on_AT(4))


def test_scrambled_action_is_not_theta_base():
    # swaps eps_1 and eps_2 without a sign: sends alpha_2 to the positive eps_1 - eps_3
    act = th.RootAction((1, 0, 2), (1, 1, 1))
    assert not th.is_theta_base(RootDatum(3).simple_roots, act)


def test_root_action_validation():
    with pytest.raises(ValueError):
        th.RootAction((0, 0), (1, 1))
    with pytest.raises(ValueError):
        th.RootAction((0, 1), (1, 2))


def test_restricted_roots_A0():
    for m in range(2, 7):
        rs = th.restricted_roots(RootDatum(m).simple_roots, th.action_on_A0(m))
        assert set(rs.roots) == {tuple(Fraction(x) for x in a) for a in RootDatum(m).roots}
        assert set(rs.roots.values()) == {1}
        assert rs.kernel_rank == 0
        assert len(rs.base) == m - 1 and rs.is_reduced()


def test_restricted_roots_reversal_base():
    w = WeylElement.from_one_line([1, 4, 2, 3])
    base = [w.act(a) for a in RootDatum(4).simple_roots]
    rs = th.restricted_roots(base, th.action_on_AT(4))
    # A_T^split = {(a, b, b, a)}; roots only see a/b, each restricted root with multiplicity 4
    assert rs.kernel_rank == 2 and len(rs.base) == 1
    assert set(rs.roots.values()) == {4}
    assert sum(rs.roots.values()) == 12 - len(th.theta_fixed_roots(th.action_on_AT(4)))


def test_restricted_roots_rejects_non_theta_base():
    with pytest.raises(ValueError):
        th.restricted_roots(RootDatum(4).simple_roots, th.action_on_AT(4))


def test_classify_examples():
    assert th.classify_parabolic(PartitionShape((2, 2))) == {
        "theta_stable": True,
        "theta_split_conjugate": True,
        "theta_elliptic_levi": True,
    }
    c = th.classify_parabolic(PartitionShape((1, 2, 1)))
    assert c["theta_stable"] and not c["theta_elliptic_levi"]
    assert not th.classify_parabolic(PartitionShape((3, 1)))["theta_stable"]


def test_classify_against_oracles(cfg):
    for m in range(1, 7):
        shapes = list(th.partitions(m))
        assert len(shapes) == 2 ** (m - 1)
        for shape in shapes:
            c = th.classify_parabolic(shape)
            assert c["theta_stable"] == th.unipotent_pattern_stable(shape, cfg)
            assert c["theta_elliptic_levi"] == th.elliptic_by_split_rank(shape)


@pytest.mark.parametrize("m", [4, 6])
def test_elliptic_conjugates_exhaustive(m):
    k = m // 2
    for w in RootDatum(m).weyl_group():
        assert th.theta_elliptic_conjugate(w) == th.theta_elliptic_conjugate_oracle(w)
    # every theta-elliptic maximal semistandard Levi has shape (k, k)
    found = th.semistandard_maximal_levis_elliptic(m)
    assert found and {shape for shape, _ in found} == {(k, k)}


def test_no_elliptic_maximal_levi_for_odd_m():
    assert th.semistandard_maximal_levis_elliptic(5) == []
    with pytest.raises(ValueError):
        th.theta_elliptic_conjugate(WeylElement.identity(5))


def test_levi_fixed_form_identity(cfg):
    x1, x2 = th.levi_fixed_form(EMatrix.identity(4, cfg.d), cfg)
    assert x1 == EMatrix.scalar(2, 2, cfg.d) and x2 == EMatrix.scalar(2, -2, cfg.d)
    assert x1.is_hermitian() and x2.is_hermitian()


def test_levi_fixed_form_realizes_fixed_points(cfg):
    rng = random.Random(14)
    theta = th.ThetaInvolution.quasi_split(4, cfg)
    gam = th.gamma_matrix(4, cfg)
    for _ in range(5):
        g = th.sample_HT0(rng, 4, cfg)
        x1, x2 = th.levi_fixed_form(g, cfg)
        y = g @ gam
        # an element of U_{x1} x U_{x2}, conjugated by g gamma, is theta-fixed
        u = EMatrix.block_diag(th.ThetaInvolution(x1).sample_fixed(rng, cfg), th.ThetaInvolution(x2).sample_fixed(rng, cfg))
        assert theta.is_fixed(y @ u @ y.inverse())


def test_levi_fixed_form_other_normalization(cfg):
    rng = random.Random(15)
    g = th.sample_HT0(rng, 4, cfg)
    x1, x2 = th.levi_fixed_form(g, cfg)
    z = EMatrix.diag(th.expected_gamma_diagonal(4), cfg.d)
    assert th.levi_fixed_form_normalized(g, cfg) == EMatrix.block_diag(x1, x2).inverse() @ z


def test_levi_fixed_form_classes_stable_under_H(cfg):
    rng = random.Random(16)
    theta = th.ThetaInvolution.quasi_split(4, cfg)
    g = th.sample_HT0(rng, 4, cfg)
    base = tuple(c.class_id for c in th.block_orbit_classes(g, cfg))
    for _ in range(5):
        h = theta.sample_fixed(rng, cfg)
        assert tuple(c.class_id for c in th.block_orbit_classes(h @ g, cfg)) == base


def test_levi_fixed_form_rejects_bad_g(cfg):
    g = EMatrix.from_entries([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], cfg.d)
    with pytest.raises(ValueError):
        th.levi_fixed_form(g, cfg)
    with pytest.raises(ValueError):
        th.levi_fixed_form(EMatrix.identity(3, cfg.d), cfg)


def test_quasi_split_form_class_is_computed(cfg):
    # det(w_l) = (-1)^(m(m-1)/2); -1 is a norm from both presets at p = 5
    for m in range(1, 6):
        cls = orbit_invariant(th.antidiagonal(m, cfg), cfg)
        assert cls.class_id == "trivial"
