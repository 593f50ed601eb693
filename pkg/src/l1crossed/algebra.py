"""Matrix C*-algebras used as coefficients, their elements, and group actions.

Two realizations are supported: the full matrix algebra ``M_d`` and the
diagonal algebra ``C(X)`` of functions on ``n`` points. Elements are stored as
``(d, d)`` complex arrays or as length-``n`` complex vectors respectively; the
``*_stack`` helpers act on a leading batch axis so that convolution can be
vectorized over a whole support at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .groups import FiniteGroup, GroupRef, IntegerGroup, heisenberg_coords

UNITARY_TOL = 1e-12


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraContext:
    """A concrete coefficient algebra: ``"full"`` (M_d) or ``"diagonal"`` (C(X))."""

    kind: str
    dim: int
    point_labels: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in ("full", "diagonal"):
            raise AlgebraError(f"unknown algebra kind {self.kind!r}")
        if not isinstance(self.dim, (int, np.integer)) or self.dim < 1:
            raise AlgebraError(f"dimension must be a positive integer, got {self.dim!r}")

    @classmethod
    def full(cls, d: int) -> "AlgebraContext":
        return cls("full", d)

    @classmethod
    def diagonal(cls, n: int, labels: Sequence[str] = ()) -> "AlgebraContext":
        return cls("diagonal", n, tuple(labels))

    @property
    def is_diagonal(self) -> bool:
        return self.kind == "diagonal"

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.dim,) if self.is_diagonal else (self.dim, self.dim)

    @property
    def basis_size(self) -> int:
        """Complex dimension of the algebra as a vector space."""
        return self.dim if self.is_diagonal else self.dim * self.dim

    def __str__(self) -> str:
        return f"C({self.dim} points)" if self.is_diagonal else f"M_{self.dim}"

    # raw array arithmetic; every function below accepts arrays of self.shape

    def coerce(self, data) -> np.ndarray:
        arr = np.array(data, dtype=np.complex128)
        if self.is_diagonal and arr.shape == (self.dim, self.dim):
            if np.any(arr[~np.eye(self.dim, dtype=bool)] != 0):
                raise AlgebraError("diagonal algebra element has nonzero off-diagonal entries")
            arr = np.diag(arr).copy()
        if arr.shape != self.shape:
            raise AlgebraError(f"expected shape {self.shape} for {self}, got {arr.shape}")
        return arr

    def one(self) -> np.ndarray:
        return np.ones(self.dim, complex) if self.is_diagonal else np.eye(self.dim, dtype=complex)

    def zero(self) -> np.ndarray:
        return np.zeros(self.shape, complex)

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return a * b if self.is_diagonal else a @ b

    def mul_stack(self, a: np.ndarray, B: np.ndarray) -> np.ndarray:
        """``a`` times each entry of the stack ``B``."""
        return a * B if self.is_diagonal else np.matmul(a, B)

    def adjoint(self, a: np.ndarray) -> np.ndarray:
        return np.conj(a) if self.is_diagonal else np.conj(np.swapaxes(a, -1, -2))

    def norm(self, a: np.ndarray) -> float:
        """C*-norm: largest singular value, or sup-norm on points."""
        if self.is_diagonal:
            return float(np.max(np.abs(a))) if a.size else 0.0
        if self.dim == 1:
            return float(abs(a[0, 0]))
        return float(np.linalg.norm(a, 2))

    def norm_stack(self, A: np.ndarray) -> np.ndarray:
        if A.shape[0] == 0:
            return np.zeros(0)
        if self.is_diagonal:
            return np.max(np.abs(A), axis=-1)
        if self.dim == 1:
            return np.abs(A[:, 0, 0])
        return np.linalg.norm(A, 2, axis=(-2, -1))

    def as_matrix(self, a: np.ndarray) -> np.ndarray:
        """Dense ``(dim, dim)`` matrix acting on ``C^dim``."""
        return np.diag(a) if self.is_diagonal else np.asarray(a)

    def basis(self) -> np.ndarray:
        """Stack of matrix units ``E_ij`` (row-major) or point indicators."""
        m = self.basis_size
        return np.eye(m, dtype=complex).reshape((m,) + self.shape)

    def element(self, data) -> "AlgElement":
        return AlgElement(self, self.coerce(data))


@dataclass(frozen=True, eq=False)
class AlgElement:
    """An element of a coefficient algebra."""

    ctx: AlgebraContext
    data: np.ndarray

    def _same(self, other: "AlgElement") -> None:
        if not isinstance(other, AlgElement) or other.ctx != self.ctx:
            raise AlgebraError("operands live in different algebras")

    def __add__(self, other: "AlgElement") -> "AlgElement":
        self._same(other)
        return AlgElement(self.ctx, self.data + other.data)

    def __sub__(self, other: "AlgElement") -> "AlgElement":
        self._same(other)
        return AlgElement(self.ctx, self.data - other.data)

    def __neg__(self) -> "AlgElement":
        return AlgElement(self.ctx, -self.data)

    def __matmul__(self, other: "AlgElement") -> "AlgElement":
        self._same(other)
        return AlgElement(self.ctx, self.ctx.mul(self.data, other.data))

    def __mul__(self, c: complex) -> "AlgElement":
        return AlgElement(self.ctx, complex(c) * self.data)

    __rmul__ = __mul__

    def adjoint(self) -> "AlgElement":
        return AlgElement(self.ctx, self.ctx.adjoint(self.data))

    def norm(self) -> float:
        return self.ctx.norm(self.data)

    def matrix(self) -> np.ndarray:
        return self.ctx.as_matrix(self.data)

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgElement) and other.ctx == self.ctx and np.array_equal(
            self.data, other.data)

    def __repr__(self) -> str:
        return f"AlgElement({self.ctx}, {self.data.tolist()})"


def alg_mul(a: AlgElement, b: AlgElement) -> AlgElement:
    return a @ b


def alg_add(a: AlgElement, b: AlgElement) -> AlgElement:
    return a + b


def alg_scale(c: complex, a: AlgElement) -> AlgElement:
    return a * c


def alg_adjoint(a: AlgElement) -> AlgElement:
    return a.adjoint()


def operator_norm(a: AlgElement) -> float:
    return a.norm()


# -- actions -----------------------------------------------------------------


class StarAction:
    """An action of a group on a coefficient algebra by *-automorphisms."""

    type = "abstract"

    def __init__(self, group: GroupRef, ctx: AlgebraContext):
        self.group = group
        self.ctx = ctx

    def apply_stack(self, g, B: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def apply(self, g, a: np.ndarray) -> np.ndarray:
        return self.apply_stack(g, a[None])[0]

    @cached_property
    def _operator_cache(self) -> dict:
        return {}

    def operator(self, g) -> np.ndarray:
        """Matrix of ``alpha_g`` on the flattened coefficient space."""
        g = self.group.check(g)
        cache = self._operator_cache
        if g not in cache:
            m = self.ctx.basis_size
            images = self.apply_stack(g, self.ctx.basis())
            cache[g] = images.reshape(m, m).T.copy()
        return cache[g]

    def spec(self) -> dict:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.group!r}, {self.ctx})"


class TrivialAction(StarAction):
    type = "trivial"

    def apply_stack(self, g, B):
        self.group.check(g)
        return B

    def spec(self) -> dict:
        return {"type": "trivial"}


class InnerAction(StarAction):
    """``alpha_g(a) = u_g a u_g*`` for a unitary representation ``u`` of a finite group.

    The unitaries must form a genuine representation (``u_g u_h = u_{gh}``);
    projective representations are rejected by :func:`validate_action`.
    """

    type = "inner"

    def __init__(self, group: FiniteGroup, ctx: AlgebraContext, unitaries):
        if ctx.is_diagonal:
            raise AlgebraError("inner actions need a full matrix algebra")
        if not isinstance(group, FiniteGroup):
            raise AlgebraError("inner actions are supported for finite groups only")
        super().__init__(group, ctx)
        u = np.array(unitaries, dtype=complex)
        if u.shape != (group.order, ctx.dim, ctx.dim):
            raise AlgebraError(f"expected {group.order} unitaries of size {ctx.dim}, got {u.shape}")
        u.setflags(write=False)
        self.unitaries = u
        self._adj = np.conj(np.swapaxes(u, -1, -2))

    def apply_stack(self, g, B):
        g = self.group.check(g)
        return self.unitaries[g] @ B @ self._adj[g]

    def spec(self) -> dict:
        return {"type": "inner", "unitaries": [complex_literal(u) for u in self.unitaries]}


class PermutationAction(StarAction):
    """Action of a finite group on ``C(X)`` by ``alpha_g(f) = f o perm_g^-1``.

    ``perms[g][x]`` is the image of the point ``x`` under ``g``.
    """

    type = "permutation"

    def __init__(self, group: FiniteGroup, ctx: AlgebraContext, perms):
        if not ctx.is_diagonal:
            raise AlgebraError("permutation actions need a diagonal algebra")
        if not isinstance(group, FiniteGroup):
            raise AlgebraError("permutation actions are supported for finite groups only")
        super().__init__(group, ctx)
        p = np.array(perms, dtype=np.int64)
        if p.shape != (group.order, ctx.dim):
            raise AlgebraError(f"expected {group.order} permutations of {ctx.dim} points, got {p.shape}")
        for row in p:
            if not _is_permutation(row):
                raise AlgebraError(f"{row.tolist()} is not a permutation")
        p.setflags(write=False)
        self.perms = p
        self._pullback = np.argsort(p, axis=1)  # inverse permutations

    def apply_stack(self, g, B):
        g = self.group.check(g)
        return B[..., self._pullback[g]]

    def spec(self) -> dict:
        return {"type": "permutation", "perms": self.perms.tolist()}


class DynamicsAction(StarAction):
    """The integers acting on ``C(X)`` through a point map: ``alpha_n(f) = f o sigma^-n``."""

    type = "dynamics"

    def __init__(self, ctx: AlgebraContext, sigma):
        if not ctx.is_diagonal:
            raise AlgebraError("dynamics actions need a diagonal algebra")
        super().__init__(IntegerGroup(), ctx)
        s = np.array(sigma, dtype=np.int64)
        if s.shape != (ctx.dim,) or not _is_permutation(s):
            raise AlgebraError(f"sigma must be a permutation of {ctx.dim} points")
        s.setflags(write=False)
        self.sigma = s
        # powers[m] = sigma^m for m in 0..p-1
        powers = [np.arange(ctx.dim)]
        while True:
            nxt = s[powers[-1]]
            if np.array_equal(nxt, powers[0]):
                break
            powers.append(nxt)
        self.period = len(powers)
        self._powers = np.array(powers)

    def power(self, m: int) -> np.ndarray:
        return self._powers[m % self.period]

    def apply_stack(self, n, B):
        n = self.group.check(n)
        return B[..., self.power(-n)]

    def spec(self) -> dict:
        return {"type": "dynamics", "sigma": self.sigma.tolist()}


def _is_permutation(p: np.ndarray) -> bool:
    return p.ndim == 1 and np.array_equal(np.sort(p), np.arange(p.size))


def trivial_action(group: GroupRef, ctx: AlgebraContext) -> TrivialAction:
    return TrivialAction(group, ctx)


def cyclic_inner_action(group: FiniteGroup, ctx: AlgebraContext, generator) -> InnerAction:
    """``Ad u^k`` on ``Z_n`` from a single unitary ``u`` with ``u^n = 1``."""
    if group.kind != "cyclic":
        raise AlgebraError("a single generator only determines actions of cyclic groups")
    u = np.array(generator, dtype=complex)
    powers = [np.eye(ctx.dim, dtype=complex)]
    for _ in range(group.order - 1):
        powers.append(powers[-1] @ u)
    return InnerAction(group, ctx, powers)


def schrodinger_unitaries(group: FiniteGroup) -> np.ndarray:
    """The n-dimensional representation of H(Z_n): ``(a, b, c) -> w^c X^b Z^a``.

    ``X`` is the cyclic shift and ``Z = diag(w^j)`` with ``w = exp(2 pi i / n)``;
    ``Z X = w X Z`` makes this a genuine (not projective) representation.
    """
    n = group.params[0]
    w = np.exp(2j * np.pi / n) if n > 2 else (-1.0 if n == 2 else 1.0)
    X = np.roll(np.eye(n, dtype=complex), 1, axis=0)
    Z = np.diag([w ** j for j in range(n)]).astype(complex)
    out = []
    for g in group.elements():
        a, b, c = heisenberg_coords(group, g)
        out.append((w ** c) * np.linalg.matrix_power(X, b) @ np.linalg.matrix_power(Z, a))
    return np.array(out)


def natural_permutation_action(group: FiniteGroup, ctx: Optional[AlgebraContext] = None) -> PermutationAction:
    if group.perm_rep is None:
        raise AlgebraError(f"{group.name} has no natural permutation representation")
    if ctx is None:
        ctx = AlgebraContext.diagonal(group.perm_rep.shape[1])
    return PermutationAction(group, ctx, group.perm_rep)


def apply_action(action: StarAction, g, a: AlgElement) -> AlgElement:
    if a.ctx != action.ctx:
        raise AlgebraError("element does not belong to the action's algebra")
    return AlgElement(a.ctx, action.apply(g, a.data))


# -- validation --------------------------------------------------------------


@dataclass(frozen=True)
class ActionValidation:
    ok: bool
    law: str = ""
    witness: tuple = ()
    defect: float = 0.0
    checks: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def validate_action(action: StarAction, *, tol: float = UNITARY_TOL, samples: int = 4,
                    seed: int = 0) -> ActionValidation:
    """Check that ``action`` is a homomorphism into *-automorphisms.

    For finite groups every pair ``(g, h)`` is tested on a full basis; for the
    integers the generators and a few powers are tested. Isometry is tested on
    ``samples`` random elements.
    """
    ctx, G = action.ctx, action.group
    basis = ctx.basis()
    checks: dict[str, float] = {}

    if isinstance(action, InnerAction):
        eye = np.eye(ctx.dim)
        worst, where = 0.0, ()
        for g in G.elements():
            u = action.unitaries[g]
            d = float(np.max(np.abs(u @ u.conj().T - eye)))
            if d > worst:
                worst, where = d, (g,)
        checks["unitarity"] = worst
        if worst > tol:
            return ActionValidation(False, "unitarity", where, worst, checks)
        worst, where = 0.0, ()
        for g in G.elements():
            for h in G.elements():
                d = float(np.max(np.abs(action.unitaries[g] @ action.unitaries[h]
                                        - action.unitaries[G.mul(g, h)])))
                if d > worst:
                    worst, where = d, (g, h)
        checks["representation"] = worst
        if worst > tol:
            return ActionValidation(False, "representation", where, worst, checks)

    elements = list(G.elements()) if G.is_finite else [0, 1, -1, 2, -3, 5]
    worst, where = 0.0, ()
    if isinstance(action, PermutationAction):
        # exact integer comparison of perm_g o perm_h against perm_gh for all pairs at once
        P = action.perms
        bad = np.argwhere(np.any(P[np.arange(G.order)[:, None, None], P[None, :, :]] != P[G.table], axis=2))
        if bad.size:
            worst, where = 1.0, tuple(int(i) for i in bad[0])
        elements_pairs = []
    else:
        elements_pairs = elements
    for g in elements_pairs:
        for h in elements:
            lhs = action.apply_stack(g, action.apply_stack(h, basis))
            rhs = action.apply_stack(G.mul(g, h), basis)
            d = float(np.max(np.abs(lhs - rhs)))
            if d > worst:
                worst, where = d, (g, h)
    checks["homomorphism"] = worst
    if worst > tol:
        return ActionValidation(False, "homomorphism", where, worst, checks)

    rng = np.random.default_rng(seed)
    if ctx.basis_size <= 16:
        probe = basis
    else:
        probe = rng.standard_normal((samples,) + ctx.shape) + 1j * rng.standard_normal((samples,) + ctx.shape)
    worst, where = 0.0, ()
    for g in elements:
        # alpha_g(b b') = alpha_g(b) alpha_g(b') and alpha_g(b*) = alpha_g(b)*
        img = action.apply_stack(g, probe)
        star = action.apply_stack(g, ctx.adjoint(probe))
        d = float(np.max(np.abs(star - ctx.adjoint(img))))
        for i in range(len(probe)):
            prod = action.apply_stack(g, ctx.mul_stack(probe[i], probe))
            d = max(d, float(np.max(np.abs(prod - ctx.mul_stack(img[i], img)))))
        if d > worst:
            worst, where = d, (g,)
    checks["star_homomorphism"] = worst
    if worst > tol:
        return ActionValidation(False, "star_homomorphism", where, worst, checks)

    worst, where = 0.0, ()
    for _ in range(samples):
        a = rng.standard_normal(ctx.shape) + 1j * rng.standard_normal(ctx.shape)
        na = ctx.norm(a)
        for g in elements:
            d = abs(ctx.norm(action.apply(g, a)) - na) / max(na, 1.0)
            if d > worst:
                worst, where = d, (g,)
    checks["isometry"] = worst
    if worst > max(tol, 1e-10):
        return ActionValidation(False, "isometry", where, worst, checks)
    return ActionValidation(True, checks=checks)


# -- literals ----------------------------------------------------------------


def complex_literal(arr) -> list:
    """Nested lists of ``[re, im]`` pairs."""
    arr = np.asarray(arr, dtype=complex)
    if arr.ndim == 0:
        return [float(arr.real), float(arr.imag)]
    return [complex_literal(x) for x in arr]


def parse_complex_literal(obj) -> np.ndarray:
    """Inverse of :func:`complex_literal`. Every scalar must be an ``[re, im]`` pair."""
    def is_real(v):
        return isinstance(v, (int, float)) and not isinstance(v, bool)

    def walk(x):
        if isinstance(x, list) and len(x) == 2 and all(is_real(v) for v in x):
            return complex(x[0], x[1])
        if isinstance(x, list) and x and not any(is_real(v) for v in x):
            return [walk(v) for v in x]
        raise AlgebraError(f"cannot read {x!r} as [re, im] pairs")
    return np.array(walk(obj), dtype=complex)
