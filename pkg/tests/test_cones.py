from __future__ import annotations

import random

import numpy as np
import pytest

from unitary_rds.cones import (
    ValuationCone,
    certificates_valid,
    cone_containment,
    conjugation_transport,
    containment_check,
    dominant_part,
    falsified_containment,
    implied_functional,
    permutation_of,
    split_dominant_part,
    target_cone,
    transported_containment,
    witness_is_valid,
)
from unitary_rds.ematrix import EMatrix
from unitary_rds.oracles import box_points, box_scan_containment, cone_mask
from unitary_rds.root_weyl import SimpleSubset, WeylElement, case_classify, double_coset_reps, maximal_subsets


def _case2(m):
    for omega in maximal_subsets(m):
        for theta in maximal_subsets(m):
            for w in double_coset_reps(theta, omega):
                if case_classify(w, theta, omega) == "Case2":
                    yield theta, w, omega


def test_dominant_part_rank4_example():
    cone = dominant_part(SimpleSubset.maximal(4, 2))
    assert cone.contains((3, 3, 1, 1)) and cone.contains((1, 1, 1, 1))
    assert not cone.contains((1, 1, 3, 3)) and not cone.contains((3, 2, 1, 1))
    assert cone.contains_strict((3, 3, 1, 1)) and not cone.contains_strict((2, 2, 2, 2))


def test_dominant_part_full_is_center():
    cone = dominant_part(SimpleSubset.full(4))
    assert cone.inequalities == ()
    assert cone.contains((5, 5, 5, 5)) and not cone.contains((1, 0, 0, 0))


def test_split_dominant_part_same_lattice():
    theta = SimpleSubset.maximal(6, 3)
    a, s = dominant_part(theta), split_dominant_part(theta)
    assert (a.equalities, a.inequalities) == (s.equalities, s.inequalities)


def test_dominant_part_within():
    inner, outer = SimpleSubset(4, {1}), SimpleSubset(4, {1, 3})
    cone = dominant_part(inner, outer)
    assert cone.equalities == ((1, -1, 0, 0),) and cone.inequalities == ((0, 0, 1, -1),)
    with pytest.raises(ValueError):
        dominant_part(outer, inner)


def test_depth_parameter():
    cone = dominant_part(SimpleSubset.maximal(4, 2), depth=1)
    assert cone.contains((2, 2, 1, 1)) and not cone.contains((1, 1, 1, 1))
    with pytest.raises(ValueError):
        implied_functional(cone, (1, 0, 0, -1))


@pytest.mark.parametrize("m", [3, 4, 5])
def test_two_sided_part_is_exclusion(m):
    pts = box_points(m, 2)
    for theta in maximal_subsets(m):
        cone = dominant_part(theta)
        both = cone_mask(pts, *cone.as_pair()) & cone_mask(pts, *cone.negate().as_pair())
        excluded = np.array([cone.in_exclusion(p) and cone.contains(p) for p in pts])
        assert (both == excluded).all()


def test_extreme_rays_generate():
    cone = target_cone(*next(_case2(4)))
    rays = cone.extreme_rays()
    assert len(rays) == len(cone.inequalities)
    for r in rays:
        assert cone.contains_strict(r)
    with pytest.raises(NotImplementedError):
        ValuationCone(2, (), ((1, 0), (0, 1), (1, 1))).extreme_rays()


def test_rank4_case2_containment():
    theta = SimpleSubset.maximal(4, 2)
    w = WeylElement.from_one_line([1, 3, 2, 4])
    res = containment_check(theta, w, theta)
    assert res.holds and certificates_valid(res)
    assert res.box_scan["violations"] == 0 and res.oracle_agreement
    assert [c.target for c in res.certificates] == [(1, 0, -1, 0), (0, 1, 0, -1)]
    assert res.strictness[0].ray == (1, 1, -1, -1)


def test_case1_rejected():
    theta = SimpleSubset.maximal(4, 2)
    with pytest.raises(ValueError):
        containment_check(theta, WeylElement.identity(4), theta)
    with pytest.raises(ValueError):
        containment_check(SimpleSubset(4, {1}), WeylElement.identity(4), theta)


@pytest.mark.parametrize("m", [4, 5, 6])
def test_containment_and_box_scan_agree(m):
    omega = SimpleSubset.maximal(m, m // 2)
    for theta in maximal_subsets(m):
        for w in double_coset_reps(theta, omega):
            if case_classify(w, theta, omega) == "Case1":
                continue
            res = containment_check(theta, w, omega)
            assert res.holds and certificates_valid(res) and res.oracle_agreement


def test_falsified_instances_give_witnesses():
    for theta, w, omega in _case2(5):
        res = falsified_containment(theta, w, omega)
        assert not res.holds and witness_is_valid(res)
        _, violations, point = box_scan_containment(5, res.source.as_pair(), res.target.as_pair())
        assert violations > 0 and res.oracle_agreement


def test_flipped_inequality_is_caught():
    theta = SimpleSubset.maximal(4, 2)
    w = WeylElement.from_one_line([1, 3, 2, 4])
    source = split_dominant_part(theta).negate()
    res = cone_containment(source, target_cone(theta, w, theta))
    assert not res.holds and witness_is_valid(res)
    assert res.box_scan["violations"] > 0


def test_transport_identity_and_central(cfg):
    cone = dominant_part(SimpleSubset.maximal(4, 2))
    assert conjugation_transport(EMatrix.identity(4, cfg.d), cone) == cone
    assert conjugation_transport(EMatrix.scalar(4, 3, cfg.d), cone) == cone
    assert conjugation_transport(EMatrix.diag([1, 2, 3, 5], cfg.d), cone) == cone


def test_transport_by_monomial_matrix(cfg):
    perm = (2, 0, 3, 1)
    g = EMatrix.permutation(perm, cfg.d)
    assert permutation_of(g) == WeylElement(perm)
    cone = dominant_part(SimpleSubset.maximal(4, 2))
    moved = conjugation_transport(g, cone)
    w = WeylElement(perm)
    for v in box_points(4, 2):
        assert cone.contains(tuple(v)) == moved.contains(w.act(tuple(v)))
    with pytest.raises(ValueError):
        permutation_of(EMatrix.from_entries([[1, 1], [0, 1]], cfg.d))


def test_transport_equivariance_random():
    rng = random.Random(21)
    for theta, w, omega in _case2(4):
        for _ in range(5):
            perm = list(range(4))
            rng.shuffle(perm)
            res = transported_containment(theta, w, omega, WeylElement(tuple(perm)), box_bound=4)
            assert res.holds and certificates_valid(res) and res.oracle_agreement
