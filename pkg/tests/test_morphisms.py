import numpy as np
import pytest

import l1crossed as L
from l1crossed.crossed import sample_rng
from l1crossed.morphisms import (HatSystemError, MorphismError, check_composite, check_regular_embedding,
                                 check_trivialization, morphism_checks, regular_lambdas, tensor_mul,
                                 trivial_companion)
from l1crossed.spectral import dedup, match_distance


def test_trivial_group_hat_is_the_identity_construction():
    base = L.CrossedSystem(L.TrivialAction(L.cyclic(1), L.AlgebraContext.full(2)))
    hat = L.build_hat_system(base)
    a = np.array([[1, 2j], [3, 4]])
    assert np.array_equal(hat.pi(a), a)
    assert np.array_equal(hat.lambdas[0], np.eye(2))


def test_swap_hat_system():
    base = L.from_dynamical_system(2, [1, 0], "cyclic")
    hat = L.build_hat_system(base)
    assert hat.system.ctx.dim == 4
    lam = hat.lambdas[1]
    # lambda_1 swaps the two copies of C^2
    assert np.array_equal(lam, np.kron(np.array([[0, 1], [1, 0]]), np.eye(2)))
    f = np.array([1, 2j])
    # pi(f) = diag(f, alpha_1(f)) = diag(1, 2i, 2i, 1)
    assert np.array_equal(hat.pi(f), np.diag([1, 2j, 2j, 1]))
    assert np.array_equal(lam @ hat.pi(f) @ lam.conj().T, hat.pi(base.action.apply(1, f)))
    assert hat.checks["equivariance"] == 0.0


def test_regular_lambdas_are_a_representation():
    G = L.heisenberg_mod(2)
    lam = regular_lambdas(G, 3)
    for g in G.elements():
        for h in G.elements():
            assert np.array_equal(lam[g] @ lam[h], lam[G.mul(g, h)])


def test_hat_system_checks_pass_on_all_systems(systems):
    for system in systems.values():
        hat = L.build_hat_system(system)
        assert hat.checks["equivariance"] <= 1e-12
        assert hat.checks["pi_isometry"] <= 1e-10


def test_hat_system_needs_finite_group():
    with pytest.raises(MorphismError):
        L.build_hat_system(L.from_dynamical_system(2, [1, 0]))
    err = HatSystemError("equivariance", 0.5)
    assert err.invariant == "equivariance" and err.defect == 0.5


def test_canonicalize_examples():
    G, ctx = L.cyclic(3), L.AlgebraContext.full(1)
    t = L.canonicalize_tensor([({0: 1, 1: 2}, [[1]]), ({1: -2}, [[1]]), ({2: 1j}, [[3]])], G, ctx)
    assert sorted(t.canonical) == [0, 2]
    assert t.canonical[2] == np.array([[3j]])
    assert t.norm() == 4.0
    assert t.representation_bound() == 3 * 1 + 2 * 1 + 3
    empty = L.canonicalize_tensor([({0: 1}, [[1]]), ({0: -1}, [[1]])], G, ctx)
    assert empty.canonical == {} and empty.norm() == 0.0


def test_tensor_round_trip(systems):
    for key in ("H2_C_triv",):
        system = systems[key]
        x = L.random_element(system, sample_rng(31, 0))
        assert L.from_tensor(L.to_tensor(x), system) == x
    with pytest.raises(MorphismError):
        L.to_tensor(systems["S3_C3_perm"].unit())


def test_trivialization_round_trip_and_product(systems):
    system = systems["Z4_M2_inner"]
    x = L.random_element(system, sample_rng(32, 0))
    y = L.random_element(system, sample_rng(32, 1))
    tx = L.trivialize_inner(x)
    assert tx.system is trivial_companion(system)
    assert (L.untrivialize(tx, system) - x).norm() <= 1e-14 * x.norm()
    assert (L.trivialize_inner(x @ y) - tx @ L.trivialize_inner(y)).norm() <= 1e-12 * (1 + x.norm() * y.norm())
    with pytest.raises(MorphismError):
        L.trivialize_inner(systems["S3_C3_perm"].unit())


def test_trivialization_check(systems):
    for key in ("Z4_M2_inner", "H2_M2_inner"):
        assert check_trivialization(systems[key], 20, 0).passed


@pytest.mark.parametrize("key", ["Z4_M2_inner", "S3_C3_perm", "H2_C_triv", "D4_C4_perm", "Z6_C5_dyn"])
def test_regular_and_composite_checks(systems, key):
    assert check_regular_embedding(systems[key], 10, 0).passed
    assert check_composite(systems[key], 10, 0).passed


def test_morphism_checks_include_trivialization_only_for_inner(systems):
    names = [r.check for r in morphism_checks(systems["Z4_M2_inner"], 3, 0)]
    assert names == ["morphisms.trivialization", "morphisms.regular", "morphisms.composite"]
    names = [r.check for r in morphism_checks(systems["S3_C3_perm"], 3, 0)]
    assert names == ["morphisms.regular", "morphisms.composite"]


@pytest.mark.parametrize("system", [L.from_dynamical_system(2, [1, 0], "cyclic"), L.group_algebra(L.cyclic(3))],
                         ids=["Z2_swap", "Z3_scalar"])
def test_composite_image_has_the_same_spectrum(system):
    hat = L.build_hat_system(system)
    target = trivial_companion(hat.system)
    for i in range(3):
        x = L.random_element(system, sample_rng(33, i))
        image = L.from_tensor(L.composite_embedding(hat, x), target)
        a = dedup(L.spectrum_finite(x).eigenvalues, 1e-6)
        b = dedup(L.spectrum_finite(image).eigenvalues, 1e-6)
        assert a.size == b.size
        assert match_distance(a, b) <= 1e-8 * (1 + x.norm())


def test_tensor_mul_matches_convolution():
    system = L.group_algebra(L.heisenberg_mod(2))
    x = L.random_element(system, sample_rng(34, 0))
    y = L.random_element(system, sample_rng(34, 1))
    prod = tensor_mul(L.to_tensor(x), L.to_tensor(y), system)
    assert prod.distance(L.to_tensor(x @ y)) == 0.0


def test_embed_regular_rejects_foreign_element(systems):
    hat = L.build_hat_system(systems["S3_C3_perm"])
    with pytest.raises(MorphismError):
        L.embed_regular(hat, systems["D4_C4_perm"].unit())
