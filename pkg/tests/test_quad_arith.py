from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unitary_rds.oracles import hilbert_symbol_bruteforce
from unitary_rds.quad_arith import (
    FieldConfig,
    QuadExtElement,
    conj,
    hilbert_symbol,
    is_norm,
    norm,
    norm_class,
    presets,
    ramified_preset,
    unramified_preset,
    valuation,
)

nonzero = st.integers(-500, 500).filter(bool)
rationals = st.builds(Fraction, nonzero, st.integers(1, 40))
coords = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 9))

# frozen from the residue search modulo p^3
HILBERT_TABLE = {
    3: {(2, 2): 1, (3, 2): -1, (3, 3): -1, (3, -1): -1, (2, 3): -1, (-1, -1): 1},
    5: {(5, 2): -1, (5, 3): -1, (5, -1): 1, (5, 5): 1, (2, 3): 1, (2, 2): 1},
    7: {(7, 2): 1, (7, 3): -1, (7, -1): -1, (7, 7): -1, (3, 3): 1},
}


def test_presets_shapes():
    assert unramified_preset(5).d == 2 and not unramified_preset(5).ramified
    assert ramified_preset(5).d == 5 and ramified_preset(5).ramified
    assert unramified_preset(7).d == 3
    assert set(presets(3)) == {"unramified", "ramified"}


def test_field_config_rejects_bad_input():
    with pytest.raises(ValueError):
        FieldConfig(2, Fraction(3))
    with pytest.raises(ValueError):
        FieldConfig(9, Fraction(2))
    with pytest.raises(ValueError):
        FieldConfig(5, Fraction(4))
    # 6 is not a rational square but is a 5-adic square (6 = 1 mod 5)
    with pytest.raises(ValueError):
        FieldConfig(5, Fraction(6))


def test_field_config_json_roundtrip():
    cfg = FieldConfig(5, Fraction(2, 9))
    assert cfg.to_json() == {"p": 5, "d": "2/9"}
    assert FieldConfig.from_json(cfg.to_json()) == cfg
    assert FieldConfig.from_json({"p": 5, "d": "2"}) == unramified_preset(5)


def test_conj_examples(cfg):
    one = cfg.element(1, 0)
    assert conj(one) == one
    assert conj(cfg.sqrt_d()) == cfg.element(0, -1)


def test_norm_example(cfg):
    x = cfg.element(2, 3)
    assert norm(x) == 4 - 9 * cfg.d
    assert x * conj(x) == norm(x)


def test_norm_example_frozen():
    # 4 - 9d for d = 2 and d = 5
    assert norm(unramified_preset(5).element(2, 3)) == -14
    assert norm(ramified_preset(5).element(2, 3)) == -41


@given(coords, coords, coords, coords)
def test_field_axioms(a, b, c, e):
    d = Fraction(2)
    x, y = QuadExtElement(a, b, d), QuadExtElement(c, e, d)
    assert conj(conj(x)) == x
    assert norm(x * y) == norm(x) * norm(y)
    assert conj(x * y) == conj(x) * conj(y)
    if x:
        assert x * x.inverse() == 1
        assert (y / x) * x == y


@given(coords, coords)
def test_conj_fixes_exactly_base_field(a, b):
    x = QuadExtElement(a, b, Fraction(5))
    assert (conj(x) == x) == x.in_base_field()


def test_valuation():
    assert valuation(Fraction(50, 3), 5) == 2
    assert valuation(Fraction(3, 125), 5) == -3
    with pytest.raises(ValueError):
        valuation(0, 5)
    assert ramified_preset(5).sqrt_d().valuation(5) == Fraction(1, 2)


def test_hilbert_trivial_first_argument():
    for b in (2, 3, 5, Fraction(7, 5), -10):
        assert hilbert_symbol(1, b, 5) == 1


@pytest.mark.parametrize("p", sorted(HILBERT_TABLE))
def test_hilbert_frozen_table(p):
    for (a, b), expected in HILBERT_TABLE[p].items():
        assert hilbert_symbol(a, b, p) == expected
        assert hilbert_symbol_bruteforce(a, b, p) == expected


def test_hilbert_unit_pairs_and_uniformizer():
    for p in (3, 5, 7, 11):
        for u in range(1, p):
            assert hilbert_symbol(u, u, p) == 1
            nonsquare = pow(u, (p - 1) // 2, p) == p - 1
            assert hilbert_symbol(p, u, p) == (-1 if nonsquare else 1)


def test_hilbert_rejects_p2_and_zero():
    with pytest.raises(ValueError):
        hilbert_symbol(3, 5, 2)
    with pytest.raises(ValueError):
        hilbert_symbol_bruteforce(3, 5, 2)
    with pytest.raises(ValueError):
        hilbert_symbol(0, 5, 5)


@settings(max_examples=60, deadline=None)
@given(rationals, rationals, st.sampled_from([3, 5, 7]))
def test_hilbert_matches_bruteforce(a, b, p):
    assert hilbert_symbol(a, b, p) == hilbert_symbol_bruteforce(a, b, p)


@settings(max_examples=200)
@given(rationals, rationals, rationals, st.sampled_from([3, 5, 7, 11]))
def test_hilbert_bimultiplicative_and_symmetric(a, a2, b, p):
    assert hilbert_symbol(a, b, p) * hilbert_symbol(a2, b, p) == hilbert_symbol(a * a2, b, p)
    assert hilbert_symbol(a, b, p) == hilbert_symbol(b, a, p)
    assert hilbert_symbol(a, -a, p) == 1


@given(coords, coords)
def test_norms_are_norms(a, b):
    for cfg in presets(5).values():
        x = cfg.element(a, b)
        if x:
            assert is_norm(norm(x), cfg)


def test_two_norm_classes(cfg):
    ids = {norm_class(a, cfg).class_id for a in (1, 2, 3, 5, 10, -1, Fraction(2, 5))}
    assert ids == {"trivial", "nontrivial"}
    assert norm_class(1, cfg).class_id == "trivial"
    with pytest.raises(ValueError):
        norm_class(0, cfg)


@given(rationals, coords, coords)
def test_norm_class_invariant_under_norms(a, x, y):
    for cfg in presets(5).values():
        z = cfg.element(x, y)
        if z:
            assert norm_class(a, cfg).class_id == norm_class(a * norm(z), cfg).class_id
