from __future__ import annotations

import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unitary_rds.oracles import double_coset_of, double_coset_partition
from unitary_rds.root_weyl import (
    PartitionShape,
    RootDatum,
    SimpleSubset,
    WeylElement,
    all_subsets,
    block_swap,
    case_classify,
    double_coset_reps,
    image_of_subset,
    levi_intersection,
    maximal_subsets,
    parabolic_subgroup,
    partition_to_subset,
    subset_to_partition,
)

perms = st.integers(2, 6).flatmap(lambda m: st.permutations(list(range(m))))


def test_root_datum_counts():
    for m in range(1, 8):
        rd = RootDatum(m)
        assert len(rd.roots) == m * (m - 1)
        assert len(rd.simple_roots) == m - 1
        for a in rd.roots:
            coeffs = rd.simple_coordinates(a)
            assert all(c >= 0 for c in coeffs) or all(c <= 0 for c in coeffs)
            assert rd.is_positive(a) == (a in rd.positive_roots)


@given(perms, perms)
def test_weyl_group_axioms(p, q):
    if len(p) != len(q):
        return
    w, v = WeylElement(tuple(p)), WeylElement(tuple(q))
    e = WeylElement.identity(len(p))
    assert w * w.inverse() == e and w.inverse() * w == e
    chi = tuple(range(1, len(p) + 1))
    assert (w * v).act(chi) == w.act(v.act(chi))
    assert (w * v).inverse() == v.inverse() * w.inverse()


def test_subset_to_partition_examples():
    assert subset_to_partition(SimpleSubset.maximal(4, 2)).parts == (2, 2)
    assert subset_to_partition(SimpleSubset.full(5)).parts == (5,)
    assert subset_to_partition(SimpleSubset.empty(4)).parts == (1, 1, 1, 1)


def test_subset_partition_bijection():
    for m in range(1, 8):
        shapes = [subset_to_partition(s) for s in all_subsets(m)]
        assert len(set(shapes)) == 2 ** (m - 1)
        for s in all_subsets(m):
            assert partition_to_subset(subset_to_partition(s)) == s


def test_double_coset_examples():
    theta = SimpleSubset.maximal(4, 2)
    reps = double_coset_reps(theta, theta)
    # frozen from the exhaustive scan of all 24 permutations
    assert [w.one_line() for w in reps] == [[1, 2, 3, 4], [1, 3, 2, 4], [3, 4, 1, 2]]
    full = SimpleSubset.full(4)
    assert double_coset_reps(full, full) == [WeylElement.identity(4)]
    empty = SimpleSubset.empty(4)
    assert len(double_coset_reps(empty, empty)) == 24


def test_case_classification_rank4():
    theta = SimpleSubset.maximal(4, 2)
    ident, middle, swap = double_coset_reps(theta, theta)
    assert case_classify(ident, theta, theta) == "Case1"
    assert swap == block_swap(2)
    assert case_classify(swap, theta, theta) == "Case1"
    assert case_classify(middle, theta, theta) == "Case2"
    with pytest.raises(ValueError):
        case_classify(WeylElement.from_one_line([2, 1, 3, 4]), theta, theta)


def test_levi_intersection_examples():
    theta = SimpleSubset.maximal(4, 2)
    ident, middle, swap = double_coset_reps(theta, theta)
    for w in (ident, swap):
        assert set(levi_intersection(w, theta, theta).roots()) == set(image_of_subset(w, theta))
    assert levi_intersection(middle, theta, theta) < theta
    assert len(levi_intersection(middle, theta, theta)) == 0
    full = SimpleSubset.full(4)
    omega = SimpleSubset.maximal(4, 1)
    (w,) = double_coset_reps(full, omega)
    assert set(levi_intersection(w, full, omega).roots()) == set(image_of_subset(w, omega))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_balanced_maximal_count(n):
    theta = SimpleSubset.maximal(2 * n, n)
    reps = double_coset_reps(theta, theta)
    assert len(reps) == n + 1
    assert [case_classify(w, theta, theta) for w in reps].count("Case1") == 2


@pytest.mark.parametrize("m", [3, 4, 5])
def test_reps_are_transversal_of_orbit_partition(m):
    for theta, omega in itertools.product(list(all_subsets(m)), repeat=2):
        reps = set(double_coset_reps(theta, omega))
        parts = double_coset_partition(theta, omega)
        assert sum(len(p) for p in parts) == math.factorial(m)
        assert len(parts) == len(reps)
        for p in parts:
            (rep,) = reps & p
            assert rep.length() == min(w.length() for w in p)
            assert [w for w in p if w.length() == rep.length()] == [rep]


@pytest.mark.parametrize("m", [4, 5, 6, 7])
def test_traversal_matches_exhaustive(m):
    for theta, omega in itertools.product(maximal_subsets(m), repeat=2):
        assert double_coset_reps(theta, omega, "traversal") == double_coset_reps(theta, omega, "exhaustive")


def test_coset_size_matches_orbit():
    theta = SimpleSubset.maximal(6, 3)
    for w in double_coset_reps(theta, theta):
        orbit = double_coset_of(w, theta, theta)
        left = parabolic_subgroup(theta)
        assert orbit == {a * w * b for a in left for b in left}


def test_unknown_method_rejected():
    with pytest.raises(ValueError):
        double_coset_reps(SimpleSubset.full(3), SimpleSubset.full(3), "fast")


def test_partition_shapes():
    assert PartitionShape((1, 2, 1)).is_balanced()
    assert not PartitionShape((3, 1)).is_balanced()
    assert PartitionShape((3, 1)).opposite().parts == (1, 3)
    with pytest.raises(ValueError):
        PartitionShape((2, 0))
