"""Structural maps between crossed-product algebras.

* ``trivialize_inner``: for ``alpha_g = Ad u_g`` the map ``b delta_g -> (b u_g) v_g``
  onto the same group with trivial action.
* ``to_tensor`` / ``from_tensor``: ``sum_g b_g v_g <-> sum_g d_g (x) b_g`` in
  ``l1(G) (x) B`` with the projective norm.
* ``build_hat_system`` / ``embed_regular``: the regular covariant pair
  ``(lambda, pi)`` on ``l2(G, C^D)`` and ``a delta_g -> pi(a) delta_g``.
* ``composite_embedding``: the three maps chained together.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .algebra import AlgebraContext, InnerAction, TrivialAction
from .crossed import CrossedSystem, L1Element, random_element, sample_rng
from .groups import FiniteGroup
from .report import FAIL, PASS, CheckResult

EQUIVARIANCE_TOL = 1e-12
ISOMETRY_TOL = 1e-10

_companions: "weakref.WeakKeyDictionary[CrossedSystem, CrossedSystem]" = weakref.WeakKeyDictionary()


class MorphismError(ValueError):
    pass


class HatSystemError(MorphismError):
    def __init__(self, invariant: str, defect: float):
        super().__init__(f"hat system invariant '{invariant}' violated (defect {defect:.3e})")
        self.invariant = invariant
        self.defect = defect


def trivial_companion(system: CrossedSystem) -> CrossedSystem:
    """``l1(G, A, triv)`` for the group and algebra of ``system`` (cached)."""
    if isinstance(system.action, TrivialAction):
        return system
    if system not in _companions:
        _companions[system] = CrossedSystem(TrivialAction(system.group, system.ctx),
                                            name=f"l1({system.group.name}, {system.ctx}, triv)")
    return _companions[system]


# -- inner actions ---------------------------------------------------------------


def trivialize_inner(x: L1Element) -> L1Element:
    action = x.system.action
    if not isinstance(action, InnerAction):
        raise MorphismError("trivialization needs an inner action")
    target = trivial_companion(x.system)
    u = action.unitaries
    return L1Element(target, {g: b @ u[g] for g, b in x.support.items()})


def untrivialize(y: L1Element, inner_system: CrossedSystem) -> L1Element:
    """Inverse of :func:`trivialize_inner`: ``b v_g -> (b u_g*) delta_g``."""
    action = inner_system.action
    if not isinstance(action, InnerAction):
        raise MorphismError("trivialization needs an inner action")
    if y.system is not trivial_companion(inner_system):
        raise MorphismError("element does not belong to the trivialized system")
    u = action.unitaries
    return L1Element(inner_system, {g: b @ u[g].conj().T for g, b in y.support.items()})


# -- projective tensor product ---------------------------------------------------


@dataclass
class TensorElement:
    """``sum_i r_i (x) b_i`` in ``l1(G) (x) A`` plus its canonical form ``sum_g d_g (x) b_g``.

    ``summands`` keeps the representation the element was built from; the
    canonical form decides equality and norm.
    """

    group: object
    ctx: AlgebraContext
    summands: list = field(default_factory=list)
    canonical: dict = field(default_factory=dict)

    def norm(self) -> float:
        """Projective norm; attained by the canonical form."""
        return float(sum(self.ctx.norm(b) for b in self.canonical.values()))

    def representation_bound(self) -> float:
        """``sum_i ||r_i||_1 ||b_i||`` for the stored representation."""
        return float(sum(sum(abs(c) for c in r.values()) * self.ctx.norm(b) for r, b in self.summands))

    def adjoint(self) -> "TensorElement":
        G = self.group
        return canonicalize_tensor(
            [({G.inv(g): 1.0}, self.ctx.adjoint(b)) for g, b in self.canonical.items()], G, self.ctx)

    def distance(self, other: "TensorElement") -> float:
        keys = set(self.canonical) | set(other.canonical)
        zero = self.ctx.zero()
        return float(sum(self.ctx.norm(self.canonical.get(g, zero) - other.canonical.get(g, zero))
                         for g in keys))

    def __repr__(self) -> str:
        return f"TensorElement({self.group.name}, {self.ctx}, support={sorted(self.canonical)})"


def canonicalize_tensor(summands: Sequence[tuple[Mapping, np.ndarray]], group, ctx: AlgebraContext) -> TensorElement:
    """Collect ``sum_i (sum_g c_g^i d_g) (x) b_i`` into ``sum_g d_g (x) (sum_i c_g^i b_i)``."""
    canonical: dict = {}
    stored = []
    for r, b in summands:
        b = ctx.coerce(b)
        r = {group.check(g): complex(c) for g, c in r.items()}
        stored.append((r, b))
        for g, c in r.items():
            canonical[g] = canonical[g] + c * b if g in canonical else c * b
    canonical = {g: v for g, v in sorted(canonical.items()) if np.any(v != 0)}
    return TensorElement(group, ctx, stored, canonical)


def to_tensor(x: L1Element) -> TensorElement:
    if not isinstance(x.system.action, TrivialAction):
        raise MorphismError("the tensor identification needs the trivial action")
    return canonicalize_tensor([({g: 1.0}, x.support[g]) for g in x.keys()], x.system.group, x.system.ctx)


def from_tensor(t: TensorElement, system: CrossedSystem) -> L1Element:
    if not isinstance(system.action, TrivialAction):
        raise MorphismError("the tensor identification needs the trivial action")
    if system.ctx != t.ctx or system.group is not t.group and system.group != t.group:
        raise MorphismError("tensor element does not match the system")
    return L1Element(system, {g: b.copy() for g, b in t.canonical.items()})


def tensor_mul(s: TensorElement, t: TensorElement, system: CrossedSystem) -> TensorElement:
    """Product in ``l1(G) (x) A`` computed through the trivial-action algebra ``system``."""
    return to_tensor(from_tensor(s, system) @ from_tensor(t, system))


# -- regular representation ------------------------------------------------------


@dataclass(eq=False)
class HatSystem:
    """The covariant pair ``(lambda, pi)`` on ``l2(G, C^D)`` and the inner system it spans.

    ``l2(G, C^D)`` is ``C^(|G| D)`` with index ``t*D + i``. The coefficient
    algebra of ``system`` is the full matrix algebra on that space, which
    contains ``C*(pi(A), lambda(G))``.
    """

    base: CrossedSystem
    system: CrossedSystem
    lambdas: np.ndarray
    checks: dict

    def pi(self, a: np.ndarray) -> np.ndarray:
        """``(pi(a) xi)(t) = alpha_{t^-1}(a) xi(t)``."""
        base = self.base
        G, ctx, action = base.group, base.ctx, base.action
        D = ctx.dim
        blocks = np.stack([ctx.as_matrix(action.apply(G.inv(t), a)) for t in G.elements()])
        out = np.zeros((G.order, D, G.order, D), complex)
        idx = np.arange(G.order)
        out[idx, :, idx, :] = blocks
        return out.reshape(G.order * D, G.order * D)


def regular_lambdas(G: FiniteGroup, D: int) -> np.ndarray:
    """``(lambda_g xi)(t) = xi(g^-1 t)``: block ``(g s, s)`` is the identity."""
    n = G.order
    out = np.zeros((n, n, D, n, D))
    eye = np.eye(D)
    s = np.arange(n)
    for g in range(n):
        out[g][G.table[g], :, s, :] = eye
    return out.reshape(n, n * D, n * D).astype(complex)


def build_hat_system(base: CrossedSystem, *, samples: int = 8, seed: int = 0) -> HatSystem:
    """Construct ``(lambda, pi)`` and verify every invariant; raises :class:`HatSystemError`."""
    G = base.group
    if not isinstance(G, FiniteGroup):
        raise MorphismError("the regular construction needs a finite group")
    ctx, action = base.ctx, base.action
    D = ctx.dim
    N = G.order * D
    lambdas = regular_lambdas(G, D)
    checks: dict[str, float] = {}

    eye = np.eye(N)
    checks["unitarity"] = max(float(np.max(np.abs(l @ l.conj().T - eye))) for l in lambdas)
    if checks["unitarity"] > EQUIVARIANCE_TOL:
        raise HatSystemError("unitarity", checks["unitarity"])
    hom = 0.0
    for g in G.elements():
        for h in G.elements():
            if not np.array_equal(lambdas[g] @ lambdas[h], lambdas[G.mul(g, h)]):
                hom = max(hom, float(np.max(np.abs(lambdas[g] @ lambdas[h] - lambdas[G.mul(g, h)]))))
    checks["lambda_homomorphism"] = hom
    if hom > 0:
        raise HatSystemError("lambda_homomorphism", hom)

    hat_ctx = AlgebraContext.full(N)
    hat = HatSystem(base, CrossedSystem(InnerAction(G, hat_ctx, lambdas),
                                        name=f"l1({G.name}, M_{N} [hat of {ctx}], Ad lambda)"),
                    lambdas, checks)

    basis = ctx.basis()
    pis = np.stack([hat.pi(b) for b in basis])
    checks["unital"] = float(np.max(np.abs(hat.pi(ctx.one()) - eye)))
    if checks["unital"] > EQUIVARIANCE_TOL:
        raise HatSystemError("unital", checks["unital"])
    mult = star = 0.0
    for i, a in enumerate(basis):
        star = max(star, float(np.max(np.abs(hat.pi(ctx.adjoint(a)) - pis[i].conj().T))))
        prods = ctx.mul_stack(a, basis)
        for j in range(len(basis)):
            mult = max(mult, float(np.max(np.abs(hat.pi(prods[j]) - pis[i] @ pis[j]))))
    checks["pi_multiplicative"], checks["pi_star"] = mult, star
    if mult > EQUIVARIANCE_TOL:
        raise HatSystemError("pi_multiplicative", mult)
    if star > EQUIVARIANCE_TOL:
        raise HatSystemError("pi_star", star)

    rng = np.random.default_rng(seed)
    probes = list(basis) + [rng.standard_normal(ctx.shape) + 1j * rng.standard_normal(ctx.shape)
                            for _ in range(samples)]
    iso = 0.0
    for a in probes:
        na = ctx.norm(a)
        iso = max(iso, abs(np.linalg.norm(hat.pi(a), 2) - na) / max(na, 1.0))
    checks["pi_isometry"] = iso
    if iso > ISOMETRY_TOL:
        raise HatSystemError("pi_isometry", iso)

    equi = 0.0
    for g in G.elements():
        lg = lambdas[g]
        images = action.apply_stack(g, basis)
        for i in range(len(basis)):
            lhs = lg @ pis[i] @ lg.conj().T
            equi = max(equi, float(np.max(np.abs(lhs - hat.pi(images[i])))))
    checks["equivariance"] = equi
    if equi > EQUIVARIANCE_TOL:
        raise HatSystemError("equivariance", equi)
    return hat


def embed_regular(hat: HatSystem, x: L1Element) -> L1Element:
    if x.system is not hat.base:
        raise MorphismError("element does not belong to the hat system's base")
    return L1Element(hat.system, {g: hat.pi(a) for g, a in x.support.items()})


def composite_embedding(hat: HatSystem, x: L1Element) -> TensorElement:
    return to_tensor(trivialize_inner(embed_regular(hat, x)))


# -- property checks -------------------------------------------------------------


def check_trivialization(system: CrossedSystem, pairs: int, seed: int) -> CheckResult:
    """Isometry, multiplicativity, *-preservation and inversion of the trivialization."""
    iso = hom = star = roundtrip = 0.0
    for i in range(pairs):
        rng = sample_rng(seed, i)
        x, y = random_element(system, rng), random_element(system, rng)
        nx, ny = x.norm(), y.norm()
        px, py = trivialize_inner(x), trivialize_inner(y)
        iso = max(iso, abs(px.norm() - nx) / max(nx, 1e-300))
        hom = max(hom, (trivialize_inner(x @ y) - px @ py).norm() / (1 + nx * ny))
        star = max(star, (trivialize_inner(x.star()) - px.star()).norm() / (1 + nx))
        roundtrip = max(roundtrip, (untrivialize(px, system) - x).norm())
    ok = iso <= 1e-12 and hom <= 1e-10 and star <= 1e-10 and roundtrip <= 1e-12
    return CheckResult("morphisms.trivialization", PASS if ok else FAIL, {
        "system": system.name, "pairs": pairs, "isometry_defect": iso, "homomorphism_defect": hom,
        "star_defect": star, "roundtrip_defect": roundtrip})


def check_regular_embedding(system: CrossedSystem, samples: int, seed: int) -> CheckResult:
    """Hat-system invariants plus isometry and *-homomorphism defects of the embedding."""
    try:
        hat = build_hat_system(system, seed=seed)
    except HatSystemError as exc:
        return CheckResult("morphisms.regular", FAIL, {"system": system.name, "invariant": exc.invariant,
                                                       "defect": exc.defect})
    iso = hom = star = 0.0
    for i in range(samples):
        rng = sample_rng(seed, i)
        x, y = random_element(system, rng), random_element(system, rng)
        nx, ny = x.norm(), y.norm()
        rx, ry = embed_regular(hat, x), embed_regular(hat, y)
        iso = max(iso, abs(rx.norm() - nx) / max(nx, 1e-300))
        hom = max(hom, (embed_regular(hat, x @ y) - rx @ ry).norm() / (1 + nx * ny))
        star = max(star, (embed_regular(hat, x.star()) - rx.star()).norm() / (1 + nx))
    ok = iso <= ISOMETRY_TOL and hom <= 1e-10 and star <= 1e-10
    witnesses = {"system": system.name, "samples": samples, "isometry_defect": iso,
                 "homomorphism_defect": hom, "star_defect": star}
    witnesses.update({f"hat_{k}": v for k, v in hat.checks.items()})
    return CheckResult("morphisms.regular", PASS if ok else FAIL, witnesses)


def check_composite(system: CrossedSystem, samples: int, seed: int, *, multiplicative: bool = True) -> CheckResult:
    """Norm, *-preservation and multiplicativity through the whole chain."""
    try:
        hat = build_hat_system(system, seed=seed)
    except HatSystemError as exc:
        return CheckResult("morphisms.composite", FAIL, {"system": system.name, "invariant": exc.invariant,
                                                         "defect": exc.defect})
    target = trivial_companion(hat.system)
    iso = star = hom = bound_gap = 0.0
    for i in range(samples):
        rng = sample_rng(seed, i)
        x = random_element(system, rng)
        nx = x.norm()
        cx = composite_embedding(hat, x)
        iso = max(iso, abs(cx.norm() - nx) / max(nx, 1e-300))
        star = max(star, composite_embedding(hat, x.star()).distance(cx.adjoint()) / (1 + nx))
        bound_gap = min(bound_gap, cx.representation_bound() - cx.norm())
        if multiplicative:
            y = random_element(system, rng)
            ny = y.norm()
            prod = tensor_mul(cx, composite_embedding(hat, y), target)
            hom = max(hom, composite_embedding(hat, x @ y).distance(prod) / (1 + nx * ny))
    ok = iso <= 1e-10 and star <= 1e-10 and hom <= 1e-10 and bound_gap >= -1e-12
    return CheckResult("morphisms.composite", PASS if ok else FAIL, {
        "system": system.name, "samples": samples, "isometry_defect": iso, "star_defect": star,
        "homomorphism_defect": hom, "min_bound_gap": bound_gap})


def morphism_checks(system: CrossedSystem, samples: int, seed: int) -> list[CheckResult]:
    results = []
    if isinstance(system.action, InnerAction):
        results.append(check_trivialization(system, samples, seed))
    results.append(check_regular_embedding(system, samples, seed))
    results.append(check_composite(system, samples, seed))
    return results
