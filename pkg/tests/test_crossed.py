import numpy as np
import pytest

import l1crossed as L
from l1crossed.crossed import (DynamicalSystem, SupportOverflow, SystemMismatch, elements_from_literal,
                               orbit_decomposition, sample_rng)

from conftest import naive_convolve

FIXED_SEED_42 = {0: float.fromhex("0x1.3807c1104fc6bp-2"), 1: float.fromhex("-0x1.0a3c65fca9a7ep+0")}


def max_defect(x, y):
    return (x - y).norm()


@pytest.mark.parametrize("key", ["Z4_M2_inner", "S3_C3_perm", "H2_C_triv", "D4_C4_perm", "H2_M2_inner",
                                 "Z6_C5_dyn"])
def test_convolution_matches_naive(systems, key):
    system = systems[key]
    for i in range(10):
        x = L.random_element(system, sample_rng(3, 2 * i), support_size=3)
        y = L.random_element(system, sample_rng(3, 2 * i + 1))
        assert max_defect(x @ y, naive_convolve(x, y)) <= 1e-12 * (1 + x.norm() * y.norm())


def test_convolution_over_integers_matches_naive():
    system = L.from_dynamical_system(5, [1, 0, 3, 4, 2])
    for i in range(10):
        x = L.random_element(system, sample_rng(4, 2 * i), window=2)
        y = L.random_element(system, sample_rng(4, 2 * i + 1), window=3)
        assert max_defect(x @ y, naive_convolve(x, y)) <= 1e-12 * (1 + x.norm() * y.norm())
        assert sorted((x @ y).keys()) == list(range(-5, 6))


def test_z4_m2_inner_product_example(systems):
    system = systems["Z4_M2_inner"]
    N = np.array([[0, 1], [0, 0]], complex)
    x = system.element({1: N})
    y = system.element({0: N.T})
    # alpha_1(N^T) = diag(1,i) N^T diag(1,-i) = [[0,0],[i,0]]
    assert (x @ y) == system.element({1: np.array([[1j, 0], [0, 0]])})
    assert (y @ x) == system.element({1: np.array([[0, 0], [0, 1]])})


def test_involution_example_on_swap():
    system = L.from_dynamical_system(2, [1, 0])
    x = system.element({1: np.array([1, 2j])})
    assert x.star() == system.element({-1: np.array([-2j, 1])})


def test_involution_is_antimultiplicative(systems):
    for system in systems.values():
        x = L.random_element(system, sample_rng(5, 0))
        y = L.random_element(system, sample_rng(5, 1))
        assert max_defect((x @ y).star(), y.star() @ x.star()) <= 1e-12 * (1 + x.norm() * y.norm())
        assert max_defect(x.star().star(), x) <= 1e-13 * (1 + x.norm())
        assert x.star().norm() == pytest.approx(x.norm(), rel=1e-12)


def test_norm_is_submultiplicative(systems):
    for system in systems.values():
        for i in range(5):
            x = L.random_element(system, sample_rng(6, 2 * i))
            y = L.random_element(system, sample_rng(6, 2 * i + 1))
            assert (x @ y).norm() <= x.norm() * y.norm() * (1 + 1e-12)


def test_delta_identities(systems):
    for system in systems.values():
        G = system.group
        e = system.unit()
        for g in G.elements():
            d = system.delta(g)
            assert d @ system.delta(G.inv(g)) == e
            assert d.star() == system.delta(G.inv(g))
            assert d.norm() == 1.0


def test_unit_is_two_sided(systems):
    for system in systems.values():
        x = L.random_element(system, sample_rng(7, 0))
        assert max_defect(system.unit() @ x, x) <= 1e-14 * x.norm()
        assert max_defect(x @ system.unit(), x) <= 1e-14 * x.norm()


def test_lin_comb_and_arithmetic(systems):
    system = systems["S3_C3_perm"]
    d0, d1 = system.delta(0), system.delta(1)
    z = L.lin_comb([2, -1j], [d0, d1])
    assert z == d0 * 2 + d1 * (-1j)
    assert (z - z).is_zero()
    assert L.lin_comb([1, -1], [d0, d0]).keys() == []
    assert (z / 2) == d0 + d1 * (-0.5j)
    assert -z == z * -1


def test_powers(systems):
    system = systems["H2_C_triv"]
    x = L.random_element(system, sample_rng(8, 0))
    assert max_defect(x ** 3, x @ x @ x) <= 1e-12 * (1 + x.norm() ** 3)
    assert x ** 0 == system.unit()


def test_dynamical_system_orbits():
    dyn = DynamicalSystem(5, (1, 0, 3, 4, 2))
    assert dyn.orbits == ((0, 1), (2, 3, 4))
    assert dyn.cycle_lengths == [2, 3]
    assert dyn.period == 6
    assert orbit_decomposition([0, 1]) == ((0,), (1,))
    with pytest.raises(ValueError):
        DynamicalSystem(3, (0, 0, 1))


def test_cyclic_flavor_agrees_with_integer_flavor_mod_period():
    zs = L.from_dynamical_system(5, [1, 0, 3, 4, 2], "integer")
    cs = L.from_dynamical_system(5, [1, 0, 3, 4, 2], "cyclic")
    assert cs.group.order == 6
    f = np.arange(5) + 1j
    for n in range(-8, 9):
        assert np.array_equal(zs.action.apply(n, f), cs.action.apply(n % 6, f))


def test_seed_42_regression_fixture():
    x = L.random_selfadjoint(L.group_algebra(L.cyclic(2)), 42)
    assert x == x.star()
    for g, re in FIXED_SEED_42.items():
        v = x.coeff(g).data.item()
        assert v.real == re and v.imag == 0.0


def test_sampling_is_deterministic_and_independent_of_order(systems):
    system = systems["D4_C4_perm"]
    forward = [L.random_element(system, sample_rng(11, i)) for i in range(5)]
    backward = [L.random_element(system, sample_rng(11, i)) for i in reversed(range(5))][::-1]
    assert all(a == b for a, b in zip(forward, backward))
    assert forward[0] != forward[1]


def test_random_selfadjoint_exact_for_permutation_action(systems):
    for key in ("S3_C3_perm", "D4_C4_perm", "Z4_M2_inner"):
        x = L.random_selfadjoint(systems[key], 9, index=3)
        assert x == x.star()


def test_mixing_systems_is_rejected(systems):
    with pytest.raises(SystemMismatch):
        systems["S3_C3_perm"].unit() + systems["D4_C4_perm"].unit()


def test_integer_sampling_needs_window():
    with pytest.raises(ValueError):
        L.random_element(L.group_algebra(L.INTEGERS), sample_rng(0))


def test_support_overflow(monkeypatch):
    import l1crossed.crossed as crossed
    monkeypatch.setattr(crossed, "MAX_SUPPORT", 10)
    system = L.group_algebra(L.INTEGERS)
    x = system.delta(-20) + system.delta(20)
    with pytest.raises(SupportOverflow):
        x @ x


def test_elements_from_literal():
    system = L.from_dynamical_system(2, [1, 0])
    x = elements_from_literal(system, [{"g": 1, "matrix": [[1, 0], [0, 2]]}, {"g": 1, "matrix": [[1, 0], [0, 0]]}])
    assert x == system.element({1: np.array([2, 2j])})
    assert elements_from_literal(system, x.to_literal()) == x
    with pytest.raises(ValueError):
        elements_from_literal(system, [{"g": 0}])


def test_norm_of_diagonal_coefficients_is_sup_norm():
    system = L.from_dynamical_system(3, [1, 2, 0])
    x = system.element({0: np.array([1, -3, 2j]), 5: np.array([0.5, 0, 0])})
    assert x.norm() == 3.5
