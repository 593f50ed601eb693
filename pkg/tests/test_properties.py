"""Algebra laws on random elements drawn by hypothesis."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

import l1crossed as L
from l1crossed.crossed import sample_rng

SYSTEMS = dict(L.standard_systems())
SYSTEMS["Z6_C5_dyn"] = L.from_dynamical_system(5, [1, 0, 3, 4, 2], "cyclic")
SYSTEMS["Z_C5_dyn"] = L.from_dynamical_system(5, [1, 0, 3, 4, 2])

system_keys = st.sampled_from(sorted(SYSTEMS))
seeds = st.integers(min_value=0, max_value=2 ** 32)
scalars = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


def draw(system, seed, index):
    window = None if system.is_finite else 2
    support = None if not system.is_finite else 1 + index % system.group.order
    return L.random_element(system, sample_rng(seed, index), window=window, support_size=support)


def close(x, y, scale):
    return (x - y).norm() <= 1e-12 * (1 + scale)


@settings(max_examples=40, deadline=None)
@given(system_keys, seeds)
def test_associativity(key, seed):
    system = SYSTEMS[key]
    x, y, z = (draw(system, seed, i) for i in range(3))
    assert close((x @ y) @ z, x @ (y @ z), x.norm() * y.norm() * z.norm())


@settings(max_examples=40, deadline=None)
@given(system_keys, seeds, scalars)
def test_bilinearity(key, seed, c):
    system = SYSTEMS[key]
    x, y, z = (draw(system, seed, i) for i in range(3))
    scale = (abs(c) + 1) * (x.norm() + y.norm()) * z.norm()
    assert close((x * c + y) @ z, (x @ z) * c + y @ z, scale)
    assert close(z @ (x * c + y), (z @ x) * c + z @ y, scale)


@settings(max_examples=40, deadline=None)
@given(system_keys, seeds, scalars)
def test_involution_laws(key, seed, c):
    system = SYSTEMS[key]
    x, y = draw(system, seed, 0), draw(system, seed, 1)
    assert close((x @ y).star(), y.star() @ x.star(), x.norm() * y.norm())
    assert close((x * c).star(), x.star() * np.conj(c), abs(c) * x.norm())
    assert close(x.star().star(), x, x.norm())
    assert abs(x.star().norm() - x.norm()) <= 1e-12 * (1 + x.norm())


@settings(max_examples=40, deadline=None)
@given(system_keys, seeds)
def test_norm_is_submultiplicative(key, seed):
    system = SYSTEMS[key]
    x, y = draw(system, seed, 0), draw(system, seed, 1)
    assert (x @ y).norm() <= x.norm() * y.norm() * (1 + 1e-12) + 1e-300
    assert (x + y).norm() <= (x.norm() + y.norm()) * (1 + 1e-15)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["Z4_M2_inner", "S3_C3_perm", "H2_C_triv", "D4_C4_perm", "Z6_C5_dyn"]), seeds)
def test_selfadjoint_elements_have_real_spectrum(key, seed):
    x = L.random_selfadjoint(SYSTEMS[key], seed)
    assert L.spectrum_finite(x).max_imag <= 1e-8 * (1 + x.norm())
