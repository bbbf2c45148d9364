import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ymft.jets import (EpsilonTower, JetAlgebra, JetRing, JetScalar,
                       NilpotentExtension, jet_algebra)


def brute_force_product(alg: JetAlgebra, a, b):
    out = np.zeros(alg.n_terms)
    for i, ei in enumerate(alg.exponents):
        for j, ej in enumerate(alg.exponents):
            total = tuple(x + y for x, y in zip(ei, ej))
            if sum(total) <= alg.degree:
                out[alg.index[total]] += a[i] * b[j]
    return out


@pytest.mark.parametrize("degree", [1, 2, 3, 4])
def test_truncated_product_against_brute_force(degree):
    alg = jet_algebra(degree)
    rng = np.random.default_rng(degree)
    a = rng.uniform(-1, 1, alg.n_terms)
    b = rng.uniform(-1, 1, alg.n_terms)
    assert np.allclose(alg.mul_coeffs(a, b), brute_force_product(alg, a, b),
                       atol=1e-14)


def test_monomial_count_degree3():
    assert jet_algebra(3).n_terms == 35
    assert jet_algebra(4).n_terms == 70


coeff_arrays = st.lists(st.floats(min_value=-2, max_value=2,
                                  allow_nan=False), min_size=35, max_size=35)


@settings(max_examples=25, deadline=None)
@given(coeff_arrays, coeff_arrays, coeff_arrays)
def test_ring_axioms(a, b, c):
    alg = jet_algebra(3)
    f = JetScalar(alg, np.array(a))
    g = JetScalar(alg, np.array(b))
    h = JetScalar(alg, np.array(c))
    scale = max(1.0, max(np.abs(a)), max(np.abs(b)), max(np.abs(c))) ** 3
    assert ((f * g) * h - f * (g * h)).max_abs() <= 1e-13 * scale
    assert (f * g - g * f).max_abs() <= 1e-13 * scale
    assert (f * (g + h) - (f * g + f * h)).max_abs() <= 1e-13 * scale


def test_multiplication_discards_above_degree_exactly():
    alg = jet_algebra(2)
    x0 = JetScalar.coordinate(0, 2)
    x1 = JetScalar.coordinate(1, 2)
    prod = (x0 * x0) * x1  # total degree 3 > 2
    assert np.all(prod.coeffs == 0.0)


def test_derivative_of_monomials():
    x0 = JetScalar.coordinate(0, 3)
    x1 = JetScalar.coordinate(1, 3)
    f = x0 * x0 * x1
    assert (f.diff(0) - (2.0 * (x0 * x1))).max_abs() == 0.0
    assert f.diff(2).max_abs() == 0.0


def test_mixed_partials_commute_exactly():
    rng = np.random.default_rng(7)
    f = JetScalar.random(rng, 1.0, 4)
    for mu in range(4):
        for nu in range(mu + 1, 4):
            d1 = f.diff(mu).diff(nu).coeffs
            d2 = f.diff(nu).diff(mu).coeffs
            assert np.array_equal(d1, d2)


def test_order_tracking():
    rng = np.random.default_rng(2)
    f = JetScalar.random(rng, 1.0, 3)
    g = f.diff(0)
    assert g.order == 2
    assert (f * g).order == 2
    with pytest.raises(ValueError):
        _ = g.diff(1).diff(2).diff(3).max_abs()  # order below zero


def test_value_at_origin_and_evaluation():
    f = JetScalar.constant(2.5, 3) + JetScalar.coordinate(1, 3)
    assert f.value_at_origin() == 2.5
    assert np.isclose(f((0.0, 0.3, 0.0, 0.0)), 2.8)


def test_nilpotent_extension_is_exact_first_derivative():
    base = JetRing(3)
    dual = NilpotentExtension(3, 1)
    rng = np.random.default_rng(3)
    f = rng.uniform(-1, 1, base.width)
    t = rng.uniform(-1, 1, base.width)
    # (f + eps t)^2 = f^2 + 2 eps f t
    x = dual.promote(f, [t])
    sq = dual.mul(x, x)
    re, im = sq[:base.width], sq[base.width:]
    assert np.allclose(re, base.mul(f, f), atol=1e-14)
    assert np.allclose(im, 2 * base.mul(f, t), atol=1e-14)


def test_multi_direction_extension():
    base = JetRing(2)
    ring = NilpotentExtension(2, 3)
    rng = np.random.default_rng(4)
    f = rng.uniform(-1, 1, base.width)
    tangents = [rng.uniform(-1, 1, base.width) for _ in range(3)]
    x = ring.promote(f, tangents)
    sq = ring.mul(x, x)
    for i, t in enumerate(tangents):
        got = sq.reshape(4, base.width)[1 + i]
        assert np.allclose(got, 2 * base.mul(f, t), atol=1e-14)


def test_epsilon_tower_homogeneous_expansion():
    base = JetRing(3)
    tower = EpsilonTower(3, 3)
    rng = np.random.default_rng(5)
    f = rng.uniform(-1, 1, base.width)
    x = tower.promote(np.zeros(base.width), [f])
    cube = tower.mul(tower.mul(x, x), x)
    blocks = cube.reshape(4, base.width)
    assert np.allclose(blocks[3],
                       base.mul(base.mul(f, f), f), atol=1e-13)
    assert np.abs(blocks[:3]).max() == 0.0
