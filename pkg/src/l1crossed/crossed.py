"""The Banach *-algebra l1(G, A, alpha) of finitely supported A-valued functions.

Product is the twisted convolution ``(xy)(g) = sum_k x_k alpha_k(y_{k^-1 g})``,
involution is ``x*(g) = alpha_g(x_{g^-1}^*)`` and the norm is
``sum_g ||x_g||``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .algebra import (AlgebraContext, AlgElement, DynamicsAction, PermutationAction, StarAction,
                      TrivialAction)
from .groups import INTEGERS, FiniteGroup, GroupRef, cyclic

PRUNE_RTOL = 1e-14
MAX_SUPPORT = 1 << 20


class SystemMismatch(ValueError):
    pass


class SupportOverflow(MemoryError):
    pass


@dataclass(frozen=True, eq=False)
class DynamicalSystem:
    """A permutation ``sigma`` of the finite set ``{0, ..., points-1}``."""

    points: int
    sigma: tuple[int, ...]
    orbits: tuple[tuple[int, ...], ...] = field(init=False)
    period: int = field(init=False)

    def __post_init__(self):
        sigma = tuple(int(s) for s in self.sigma)
        if len(sigma) != self.points or sorted(sigma) != list(range(self.points)):
            raise ValueError(f"sigma = {list(self.sigma)} is not a bijection of {self.points} points")
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "orbits", orbit_decomposition(sigma))
        object.__setattr__(self, "period", math.lcm(*(len(c) for c in self.orbits)) if self.orbits else 1)

    @property
    def cycle_lengths(self) -> list[int]:
        return [len(c) for c in self.orbits]

    def to_dict(self) -> dict:
        return {"points": self.points, "sigma": list(self.sigma)}


def orbit_decomposition(sigma: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Cycles of a permutation, each starting at its smallest point."""
    seen = [False] * len(sigma)
    cycles = []
    for start in range(len(sigma)):
        if seen[start]:
            continue
        cycle = []
        x = start
        while not seen[x]:
            seen[x] = True
            cycle.append(x)
            x = sigma[x]
        cycles.append(tuple(cycle))
    return tuple(cycles)


class CrossedSystem:
    """A C*-dynamical system ``(A, G, alpha)`` and the factory for its l1 elements."""

    def __init__(self, action: StarAction, *, name: str = "", dynamics: Optional[DynamicalSystem] = None):
        self.action = action
        self.group: GroupRef = action.group
        self.ctx: AlgebraContext = action.ctx
        self.dynamics = dynamics
        self.name = name or f"l1({self.group.name}, {self.ctx}, {action.type})"

    @property
    def is_finite(self) -> bool:
        return self.group.is_finite

    def element(self, values: Mapping) -> "L1Element":
        support = {}
        for g, a in values.items():
            g = self.group.check(g)
            arr = a.data if isinstance(a, AlgElement) else self.ctx.coerce(a)
            if isinstance(a, AlgElement) and a.ctx != self.ctx:
                raise SystemMismatch("coefficient from a different algebra")
            if np.any(arr != 0):
                support[g] = arr
        return L1Element(self, support)

    def zero(self) -> "L1Element":
        return L1Element(self, {})

    def delta(self, g) -> "L1Element":
        return L1Element(self, {self.group.check(g): self.ctx.one()})

    def unit(self) -> "L1Element":
        return self.delta(self.group.identity)

    def embed_coeff(self, a) -> "L1Element":
        return self.element({self.group.identity: a})

    def __repr__(self) -> str:
        return f"CrossedSystem({self.name})"


class L1Element:
    """A finitely supported function ``G -> A``; no stored value is zero."""

    __slots__ = ("system", "support")

    def __init__(self, system: CrossedSystem, support: dict):
        self.system = system
        self.support = support

    # -- inspection --

    def coeff(self, g) -> AlgElement:
        ctx = self.system.ctx
        return AlgElement(ctx, self.support.get(g, ctx.zero()))

    def keys(self) -> list:
        return sorted(self.support)

    def stacked(self) -> tuple[list, np.ndarray]:
        keys = self.keys()
        if not keys:
            return keys, np.zeros((0,) + self.system.ctx.shape, complex)
        return keys, np.stack([self.support[g] for g in keys])

    def norm(self) -> float:
        _, vals = self.stacked()
        return float(np.sum(self.system.ctx.norm_stack(vals)))

    def is_zero(self) -> bool:
        return not self.support

    def _same(self, other: "L1Element") -> None:
        if not isinstance(other, L1Element) or other.system is not self.system:
            raise SystemMismatch("operands belong to different systems")

    # -- vector space --

    def __add__(self, other: "L1Element") -> "L1Element":
        return lin_comb([1, 1], [self, other])

    def __sub__(self, other: "L1Element") -> "L1Element":
        return lin_comb([1, -1], [self, other])

    def __neg__(self) -> "L1Element":
        return lin_comb([-1], [self])

    def __mul__(self, c) -> "L1Element":
        if isinstance(c, L1Element):
            return NotImplemented
        return lin_comb([c], [self])

    __rmul__ = __mul__

    def __truediv__(self, c) -> "L1Element":
        return lin_comb([1 / c], [self])

    # -- algebra --

    def __matmul__(self, other: "L1Element") -> "L1Element":
        return convolve(self, other)

    def __pow__(self, n: int) -> "L1Element":
        if n < 0:
            raise ValueError("negative powers are not supported")
        result, base = self.system.unit(), self
        while n:
            if n & 1:
                result = convolve(result, base)
            n >>= 1
            if n:
                base = convolve(base, base)
        return result

    def star(self) -> "L1Element":
        return involute(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, L1Element) or other.system is not self.system:
            return False
        if self.support.keys() != other.support.keys():
            return False
        return all(np.array_equal(v, other.support[g]) for g, v in self.support.items())

    __hash__ = None

    def to_literal(self) -> list:
        from .algebra import complex_literal
        return [{"g": g, "matrix": complex_literal(self.support[g])} for g in self.keys()]

    def __repr__(self) -> str:
        return f"L1Element({self.system.name}, support={self.keys()})"


def _prune(system: CrossedSystem, keys, values: np.ndarray, threshold: float) -> L1Element:
    if len(keys) == 0:
        return system.zero()
    norms = system.ctx.norm_stack(values)
    keep = np.nonzero(norms > threshold)[0]
    return L1Element(system, {keys[i]: values[i].copy() for i in keep})


def lin_comb(coeffs: Sequence[complex], elements: Sequence[L1Element]) -> L1Element:
    """``sum_i c_i x_i``; exact zeros are dropped from the support."""
    if not elements:
        raise ValueError("lin_comb needs at least one element")
    system = elements[0].system
    acc: dict = {}
    for c, x in zip(coeffs, elements, strict=True):
        elements[0]._same(x)
        c = complex(c)
        for g, v in x.support.items():
            acc[g] = acc[g] + c * v if g in acc else c * v
    return L1Element(system, {g: v for g, v in acc.items() if np.any(v != 0)})


def equal_within(x: L1Element, y: L1Element, tol: float) -> bool:
    return (x - y).norm() <= tol


def l1_norm(x: L1Element) -> float:
    return x.norm()


def convolve(x: L1Element, y: L1Element, *, prune_rtol: float = PRUNE_RTOL) -> L1Element:
    """Twisted convolution; coefficients of norm at most ``prune_rtol (|x||y| + 1)`` are dropped.

    ``prune_rtol=0`` keeps everything except exact zeros.
    """
    x._same(y)
    system = x.system
    ctx, action, G = system.ctx, system.action, system.group
    if x.is_zero() or y.is_zero():
        return system.zero()
    ks, X = x.stacked()
    hs, Y = y.stacked()
    trivial = isinstance(action, TrivialAction)
    if isinstance(G, FiniteGroup):
        out = np.zeros((G.order,) + ctx.shape, complex)
        hs_arr = np.asarray(hs)
        for i, k in enumerate(ks):
            AY = Y if trivial else action.apply_stack(k, Y)
            # g -> k*g is injective, so the target rows are distinct
            out[G.table[k, hs_arr]] += ctx.mul_stack(X[i], AY)
        keys = list(range(G.order))
    else:
        lo, hi = ks[0] + hs[0], ks[-1] + hs[-1]
        width = hi - lo + 1
        if width * ctx.basis_size > MAX_SUPPORT:
            raise SupportOverflow(f"convolution support of width {width} exceeds the memory cap")
        out = np.zeros((width,) + ctx.shape, complex)
        offs = np.asarray(hs) - lo
        for i, k in enumerate(ks):
            AY = Y if trivial else action.apply_stack(k, Y)
            out[offs + k] += ctx.mul_stack(X[i], AY)
        keys = list(range(lo, hi + 1))
    threshold = prune_rtol * (x.norm() * y.norm() + 1.0) if prune_rtol else 0.0
    return _prune(system, keys, out, threshold)


def involute(x: L1Element) -> L1Element:
    system = x.system
    G, ctx, action = system.group, system.ctx, system.action
    out = {}
    for h, v in x.support.items():
        g = G.inv(h)
        out[g] = action.apply(g, ctx.adjoint(v))
    return L1Element(system, out)


def delta(system: CrossedSystem, g) -> L1Element:
    return system.delta(g)


def unit(system: CrossedSystem) -> L1Element:
    return system.unit()


def embed_coeff(system: CrossedSystem, a) -> L1Element:
    return system.embed_coeff(a)


# -- builders ----------------------------------------------------------------


def scalar_context() -> AlgebraContext:
    return AlgebraContext.full(1)


def group_algebra(G: GroupRef) -> CrossedSystem:
    """``l1(G)``: scalar coefficients, trivial action."""
    return CrossedSystem(TrivialAction(G, scalar_context()))


def from_dynamical_system(points: int, sigma: Sequence[int], flavor: str = "integer") -> CrossedSystem:
    """The system ``(C(X), Z, alpha_n(f) = f o sigma^-n)`` on a finite set X.

    With ``flavor="cyclic"`` the action is factored through ``Z_p`` where ``p``
    is the order of ``sigma``, giving a finite-dimensional algebra.
    """
    dyn = DynamicalSystem(points, tuple(sigma))
    ctx = AlgebraContext.diagonal(points)
    if flavor == "integer":
        action = DynamicsAction(ctx, dyn.sigma)
        return CrossedSystem(action, name=f"l1(Z, C(X{points}), sigma)", dynamics=dyn)
    if flavor == "cyclic":
        G = cyclic(dyn.period)
        s = np.asarray(dyn.sigma)
        perms = [np.arange(points)]
        for _ in range(dyn.period - 1):
            perms.append(s[perms[-1]])
        action = PermutationAction(G, ctx, perms)
        return CrossedSystem(action, name=f"l1(Z{dyn.period}, C(X{points}), sigma)", dynamics=dyn)
    raise ValueError(f"unknown flavor {flavor!r}; expected 'integer' or 'cyclic'")


# -- sampling ----------------------------------------------------------------


def sample_rng(seed: int, index: int = 0) -> np.random.Generator:
    """Independent stream for sample ``index``; order of generation is irrelevant."""
    return np.random.default_rng(np.random.SeedSequence([seed & (2 ** 64 - 1), index]))


def random_element(system: CrossedSystem, rng: np.random.Generator, *, window: Optional[int] = None,
                   support_size: Optional[int] = None, norm_scale: float = 1.0) -> L1Element:
    """Coefficients with independent standard normal real and imaginary parts.

    Finite groups default to full support (or a random subset of
    ``support_size`` elements); the integers need a ``window`` and use
    ``[-window, window]``.
    """
    G, ctx = system.group, system.ctx
    if isinstance(G, FiniteGroup):
        if support_size is None or support_size >= G.order:
            keys = list(G.elements())
        else:
            keys = sorted(int(g) for g in rng.choice(G.order, size=support_size, replace=False))
    else:
        if window is None:
            raise ValueError("sampling over the integers needs a support window")
        keys = list(range(-window, window + 1))
    shape = (len(keys),) + ctx.shape
    vals = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) * norm_scale
    return system.element(dict(zip(keys, vals)))


def random_selfadjoint(system: CrossedSystem, seed: int, norm_scale: float = 1.0, *, index: int = 0,
                       window: Optional[int] = None, support_size: Optional[int] = None) -> L1Element:
    """``(y + y*)/2`` for a random ``y``, deterministic in ``(seed, index)``."""
    y = random_element(system, sample_rng(seed, index), window=window, support_size=support_size,
                       norm_scale=norm_scale)
    return (y + y.star()) * 0.5


def elements_from_literal(system: CrossedSystem, entries: Iterable[dict]) -> L1Element:
    """Read ``[{"g": element, "matrix": [[re, im], ...]}, ...]``."""
    from .algebra import parse_complex_literal
    values: dict = {}
    for entry in entries:
        if set(entry) != {"g", "matrix"}:
            raise ValueError(f"element entries need exactly the keys 'g' and 'matrix', got {sorted(entry)}")
        g = system.group.check(entry["g"])
        arr = system.ctx.coerce(parse_complex_literal(entry["matrix"]))
        values[g] = values[g] + arr if g in values else arr
    return system.element(values)


def standard_systems() -> dict[str, CrossedSystem]:
    """The four finite benchmark systems used by the verification suite."""
    from .algebra import cyclic_inner_action, natural_permutation_action
    from .groups import dihedral, heisenberg_mod, symmetric
    z4 = cyclic(4)
    return {
        "Z4_M2_inner": CrossedSystem(cyclic_inner_action(z4, AlgebraContext.full(2), np.diag([1, 1j])),
                                     name="l1(Z4, M_2, Ad diag(1,i))"),
        "S3_C3_perm": CrossedSystem(natural_permutation_action(symmetric(3)), name="l1(S3, C(3 points), perm)"),
        "H2_C_triv": CrossedSystem(TrivialAction(heisenberg_mod(2), scalar_context()),
                                   name="l1(H(Z2), C, triv)"),
        "D4_C4_perm": CrossedSystem(natural_permutation_action(dihedral(4)), name="l1(D4, C(4 points), perm)"),
    }


__all__ = [
    "CrossedSystem", "L1Element", "DynamicalSystem", "SystemMismatch", "SupportOverflow",
    "convolve", "involute", "lin_comb", "equal_within", "l1_norm", "delta", "unit", "embed_coeff",
    "from_dynamical_system", "group_algebra", "scalar_context", "orbit_decomposition",
    "random_element", "random_selfadjoint", "sample_rng", "elements_from_literal", "standard_systems",
    "INTEGERS",
]
