import math

import numpy as np
import pytest

from l1crossed.algebra import (AlgebraContext, AlgebraError, DynamicsAction, InnerAction,
                               PermutationAction, TrivialAction, alg_adjoint, alg_mul, apply_action,
                               complex_literal, cyclic_inner_action, natural_permutation_action,
                               operator_norm, parse_complex_literal, schrodinger_unitaries,
                               validate_action)
from l1crossed.groups import INTEGERS, cyclic, dihedral, heisenberg_mod, symmetric

M2 = AlgebraContext.full(2)
C2 = AlgebraContext.diagonal(2)
NIL = np.array([[0, 1], [0, 0]], complex)


def svd_2x2_largest(a):
    """Largest singular value of a 2x2 matrix from the closed-form eigenvalues of a* a."""
    h = a.conj().T @ a
    tr, det = h.trace().real, np.linalg.det(h).real
    return math.sqrt((tr + math.sqrt(max(tr * tr - 4 * det, 0.0))) / 2)


def test_identity_times_a():
    a = M2.element([[1, 2j], [3, 4]])
    assert alg_mul(M2.element(np.eye(2)), a) == a


def test_diagonal_product_stays_diagonal():
    f = C2.element([1, -1])
    assert (f @ f) == C2.element([1, 1])
    assert (f @ f).data.shape == (2,)


def test_nilpotent_square():
    n = M2.element(NIL)
    assert np.array_equal((n @ n).data, np.zeros((2, 2)))


def test_adjoint_examples():
    assert alg_adjoint(M2.element(1j * np.eye(2))) == M2.element(-1j * np.eye(2))
    d = C2.element([2.5, -1])
    assert alg_adjoint(d) == d
    assert alg_adjoint(M2.element(NIL)) == M2.element(NIL.T)


def test_operator_norm_examples():
    assert operator_norm(M2.element(np.eye(2))) == pytest.approx(1, rel=1e-12)
    assert operator_norm(AlgebraContext.diagonal(2).element([3, -4j])) == 4
    a = np.array([[0, 2], [0, 0]], complex)
    assert operator_norm(M2.element(a)) == pytest.approx(svd_2x2_largest(a), rel=1e-10)
    assert svd_2x2_largest(a) == 2


def test_operator_norm_random_against_closed_form(rng):
    for _ in range(20):
        a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        assert operator_norm(M2.element(a)) == pytest.approx(svd_2x2_largest(a), rel=1e-10)


def test_norm_laws_on_samples(rng):
    ctx = AlgebraContext.full(3)
    for _ in range(50):
        a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        b = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        na, nb = ctx.norm(a), ctx.norm(b)
        assert ctx.norm(a @ b) <= na * nb + 1e-9
        assert ctx.norm(ctx.adjoint(a) @ a) == pytest.approx(na ** 2, rel=1e-9)


def test_context_mismatch():
    with pytest.raises(AlgebraError):
        M2.element(np.eye(2)) @ AlgebraContext.full(3).element(np.eye(3))
    with pytest.raises(AlgebraError):
        C2.coerce(np.ones((2, 2)))


def test_trivial_action_is_identity():
    act = TrivialAction(cyclic(3), M2)
    a = M2.element([[1, 2], [3, 4]])
    assert apply_action(act, 2, a) == a
    assert validate_action(act)


def test_inner_action_diag_phase():
    act = cyclic_inner_action(cyclic(4), M2, np.diag([1, 1j]))
    out = apply_action(act, 1, M2.element(NIL))
    assert np.array_equal(out.data, np.array([[0, -1j], [0, 0]]))


def test_inner_action_rejects_nonunitary():
    u = np.array([np.eye(2), np.diag([1, 1.5])], complex)
    act = InnerAction(cyclic(2), M2, u)
    result = validate_action(act)
    assert not result.ok and result.law == "unitarity" and result.witness == (1,)
    assert result.defect == pytest.approx(1.25)


def test_inner_action_rejects_projective_representation():
    # Pauli X and Z anticommute, so g -> {I, X, Z, XZ} is only projective on Z2 x Z2
    from l1crossed.groups import direct_product
    X = np.array([[0, 1], [1, 0]], complex)
    Z = np.diag([1, -1]).astype(complex)
    act = InnerAction(direct_product(cyclic(2), cyclic(2)), M2, [np.eye(2), Z, X, X @ Z])
    result = validate_action(act)
    assert not result.ok and result.law == "representation"


def test_schrodinger_is_a_representation():
    for n in (2, 3):
        G = heisenberg_mod(n)
        act = InnerAction(G, AlgebraContext.full(n), schrodinger_unitaries(G))
        assert validate_action(act)


def test_dynamics_swap():
    act = DynamicsAction(C2, [1, 0])
    out = apply_action(act, 1, C2.element([1, -1]))
    assert out == C2.element([-1, 1])
    assert act.period == 2
    assert validate_action(act)


def test_dynamics_is_composition_with_inverse_power():
    sigma = [1, 2, 0, 4, 3]
    ctx = AlgebraContext.diagonal(5)
    act = DynamicsAction(ctx, sigma)
    f = np.arange(5) + 1j
    for n in range(-7, 8):
        # f o sigma^-n evaluated pointwise
        s_inv_n = list(range(5))
        for _ in range(abs(n)):
            s_inv_n = [sigma.index(x) if n > 0 else sigma[x] for x in s_inv_n]
        expected = np.array([f[s_inv_n[x]] for x in range(5)])
        assert np.array_equal(act.apply(n, f), expected)


@pytest.mark.parametrize("G", [symmetric(3), dihedral(4), cyclic(5)], ids=lambda G: G.name)
def test_natural_permutation_actions_validate(G):
    assert validate_action(natural_permutation_action(G))


def test_permutation_action_rejects_non_permutation():
    with pytest.raises(AlgebraError):
        PermutationAction(cyclic(2), C2, [[0, 1], [0, 0]])


def test_permutation_action_rejects_non_homomorphism():
    # both generators of Z3 sent to the same transposition
    act = PermutationAction(cyclic(3), AlgebraContext.diagonal(2), [[0, 1], [1, 0], [1, 0]])
    assert validate_action(act).law == "homomorphism"


def test_action_commutes_with_adjoint_and_inverts(rng):
    G = heisenberg_mod(2)
    act = InnerAction(G, M2, schrodinger_unitaries(G))
    for g in G.elements():
        a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        assert np.max(np.abs(act.apply(g, a.conj().T) - act.apply(g, a).conj().T)) <= 1e-12
        assert np.max(np.abs(act.apply(g, act.apply(G.inv(g), a)) - a)) <= 1e-12


def test_operator_matrix_matches_apply(rng):
    act = cyclic_inner_action(cyclic(4), M2, np.diag([1, 1j]))
    a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    for g in range(4):
        assert np.allclose(act.operator(g) @ a.reshape(-1), act.apply(g, a).reshape(-1), atol=1e-14)


def test_complex_literal_round_trip():
    a = np.array([[1 + 2j, -0.5], [0, 3j]])
    assert np.array_equal(parse_complex_literal(complex_literal(a)), a)
    with pytest.raises(AlgebraError):
        parse_complex_literal([[1, 2, 3]])


def test_dynamics_needs_bijection():
    with pytest.raises(AlgebraError):
        DynamicsAction(C2, [0, 0])
    assert DynamicsAction(C2, [0, 1]).group == INTEGERS
