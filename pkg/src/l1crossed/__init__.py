"""Crossed-product Banach *-algebras l1(G, A, alpha) with matrix coefficients."""

__version__ = "0.1.0"

from .groups import (INTEGERS, FiniteGroup, GroupError, IntegerGroup, build_group, cyclic, dihedral,
                     direct_product, group_inv, group_mul, heisenberg_mod, symmetric, validate_group)
from .algebra import (AlgebraContext, AlgElement, DynamicsAction, InnerAction, PermutationAction,
                      StarAction, TrivialAction, apply_action, cyclic_inner_action,
                      natural_permutation_action, operator_norm, schrodinger_unitaries,
                      validate_action)
from .crossed import (CrossedSystem, DynamicalSystem, L1Element, convolve, delta, embed_coeff,
                      equal_within, from_dynamical_system, group_algebra, involute, l1_norm, lin_comb,
                      random_element, random_selfadjoint, standard_systems, unit)
from .spectral import (SpectrumResult, dft_spectrum_oracle, eig_general, evaluation_reps,
                       gelfand_radius, left_mult_matrix, spectrum_finite, verify_hermitian,
                       verify_symmetric)
from .morphisms import (HatSystem, TensorElement, build_hat_system, canonicalize_tensor,
                        composite_embedding, embed_regular, from_tensor, to_tensor,
                        trivialize_inner, untrivialize)
