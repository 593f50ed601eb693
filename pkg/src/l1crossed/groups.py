"""Finite groups as Cayley tables, plus the integers as a symbolic group.

Elements of a :class:`FiniteGroup` are the indices ``0..order-1``; elements of
:class:`IntegerGroup` are Python ints. Both expose the same small interface
(``mul``, ``inv``, ``identity``) so the algebra code never needs to know which
one it is handling.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

MAX_ORDER = 1024


class GroupError(ValueError):
    """Invalid group parameters or an inconsistent Cayley table."""


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group stored as a dense multiplication table.

    ``table[g, h]`` is the index of ``g*h``. ``perm_rep`` optionally carries a
    faithful action on points ``0..m-1`` (``perm_rep[g][x]`` is the image of
    ``x`` under ``g``) for groups that come with one.
    """

    table: np.ndarray
    identity: int
    inverses: np.ndarray
    labels: tuple[str, ...] = ()
    name: str = "group"
    kind: str = "table"
    params: tuple = ()
    perm_rep: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        self.table.setflags(write=False)
        self.inverses.setflags(write=False)
        if self.perm_rep is not None:
            self.perm_rep.setflags(write=False)

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    @property
    def is_finite(self) -> bool:
        return True

    def elements(self) -> range:
        return range(self.order)

    def check(self, g) -> int:
        if not isinstance(g, (int, np.integer)) or not 0 <= g < self.order:
            raise GroupError(f"{g!r} is not an element of {self.name}")
        return int(g)

    def mul(self, g: int, h: int) -> int:
        return int(self.table[self.check(g), self.check(h)])

    def inv(self, g: int) -> int:
        return int(self.inverses[self.check(g)])

    def label(self, g: int) -> str:
        return self.labels[g] if self.labels else str(g)

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"


class IntegerGroup:
    """The additive group of integers."""

    name = "Z"
    kind = "integer"
    params = ()
    identity = 0
    is_finite = False

    def check(self, g) -> int:
        if isinstance(g, bool) or not isinstance(g, (int, np.integer)):
            raise GroupError(f"{g!r} is not an integer")
        return int(g)

    def mul(self, g: int, h: int) -> int:
        return self.check(g) + self.check(h)

    def inv(self, g: int) -> int:
        return -self.check(g)

    def label(self, g: int) -> str:
        return str(g)

    def is_abelian(self) -> bool:
        return True

    def __eq__(self, other) -> bool:
        return isinstance(other, IntegerGroup)

    def __hash__(self) -> int:
        return hash(IntegerGroup)

    def __repr__(self) -> str:
        return "IntegerGroup()"


GroupRef = Union[FiniteGroup, IntegerGroup]

INTEGERS = IntegerGroup()


def group_mul(G: GroupRef, g, h):
    return G.mul(g, h)


def group_inv(G: GroupRef, g):
    return G.inv(g)


# -- validation --------------------------------------------------------------


@dataclass(frozen=True)
class GroupValidation:
    ok: bool
    law: str = ""
    witness: tuple = ()

    def __bool__(self) -> bool:
        return self.ok


def validate_group(G: FiniteGroup) -> GroupValidation:
    """Check closure, identity, inverses and associativity of a Cayley table.

    On failure the result names the first violated law and a witness: a
    triple ``(g, h, k)`` for associativity, or a single element otherwise.
    """
    table = np.asarray(G.table)
    n = table.shape[0]
    if table.ndim != 2 or table.shape != (n, n) or n == 0:
        return GroupValidation(False, "shape", (table.shape,))
    if table.min() < 0 or table.max() >= n:
        bad = np.argwhere((table < 0) | (table >= n))[0]
        return GroupValidation(False, "closure", tuple(int(i) for i in bad))
    e = G.identity
    if not 0 <= e < n:
        return GroupValidation(False, "identity", (e,))
    for g in range(n):
        if table[e, g] != g or table[g, e] != g:
            return GroupValidation(False, "identity", (g,))
    inv = np.asarray(G.inverses)
    if inv.shape != (n,):
        return GroupValidation(False, "inverse", ())
    for g in range(n):
        if not 0 <= inv[g] < n or table[g, inv[g]] != e or table[inv[g], g] != e:
            return GroupValidation(False, "inverse", (g,))
    # (gh)k versus g(hk), one g at a time to keep memory at n^2
    for g in range(n):
        left = table[table[g]]  # left[h, k] = (g h) k
        right = table[g][table]  # right[h, k] = g (h k)
        diff = np.argwhere(left != right)
        if diff.size:
            h, k = diff[0]
            return GroupValidation(False, "associativity", (g, int(h), int(k)))
    return GroupValidation(True)


# -- constructors ------------------------------------------------------------


def from_elements(elements: Sequence, mul, *, name: str, kind: str, params: tuple = (),
                  labels: Optional[Sequence[str]] = None, perm_rep=None) -> FiniteGroup:
    """Tabulate a group given its elements and a multiplication function."""
    elements = list(elements)
    n = len(elements)
    if n > MAX_ORDER:
        raise GroupError(f"{name}: order {n} exceeds the table limit {MAX_ORDER}")
    index = {x: i for i, x in enumerate(elements)}
    table = np.empty((n, n), dtype=np.int64)
    for i, x in enumerate(elements):
        for j, y in enumerate(elements):
            try:
                table[i, j] = index[mul(x, y)]
            except KeyError:
                raise GroupError(f"{name}: product of {x} and {y} leaves the element set") from None
    identity = _find_identity(table)
    inverses = np.argmax(table == identity, axis=1)
    if labels is None:
        labels = [str(x) for x in elements]
    G = FiniteGroup(table, identity, inverses.astype(np.int64), tuple(labels), name, kind,
                    params, None if perm_rep is None else np.asarray(perm_rep, dtype=np.int64))
    check = validate_group(G)
    if not check:
        raise GroupError(f"{name}: {check.law} fails at {check.witness}")
    return G


def _find_identity(table: np.ndarray) -> int:
    n = table.shape[0]
    row = np.arange(n)
    for e in range(n):
        if np.array_equal(table[e], row) and np.array_equal(table[:, e], row):
            return e
    raise GroupError("no identity element")


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise GroupError(msg)


def cyclic(n: int) -> FiniteGroup:
    _require(isinstance(n, int) and n >= 1, f"cyclic group needs n >= 1, got {n!r}")
    _require(n <= MAX_ORDER, f"cyclic({n}) exceeds the table limit {MAX_ORDER}")
    idx = np.arange(n)
    table = (idx[:, None] + idx[None, :]) % n
    inverses = (-idx) % n
    perms = (idx[:, None] + idx[None, :]) % n  # rotation of n points
    G = FiniteGroup(table, 0, inverses, tuple(str(k) for k in range(n)), f"Z{n}", "cyclic", (n,),
                    perms)
    return G


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of a regular n-gon, order 2n.

    Element ``k + n*j`` is ``r^k s^j`` with ``s r s = r^-1``; the permutation
    representation acts on the vertices ``0..n-1``.
    """
    _require(isinstance(n, int) and n >= 1, f"dihedral group needs n >= 1, got {n!r}")
    _require(2 * n <= MAX_ORDER, f"dihedral({n}) exceeds the table limit {MAX_ORDER}")
    elements = [(k, j) for j in range(2) for k in range(n)]

    def mul(x, y):
        k1, j1 = x
        k2, j2 = y
        return ((k1 + (-k2 if j1 else k2)) % n, (j1 + j2) % 2)

    labels = [("r%d" % k if k else "e") if not j else ("r%ds" % k if k else "s") for k, j in elements]
    perms = [[((-x if j else x) + k) % n for x in range(n)] for k, j in elements]
    return from_elements(elements, mul, name=f"D{n}", kind="dihedral", params=(n,),
                         labels=labels, perm_rep=perms)


def symmetric(n: int) -> FiniteGroup:
    """All permutations of ``n`` points; ``(g*h)(x) = g(h(x))``."""
    _require(isinstance(n, int) and n >= 1, f"symmetric group needs n >= 1, got {n!r}")
    _require(n <= 6, f"symmetric({n}) is limited to n <= 6")
    elements = list(itertools.permutations(range(n)))

    def mul(p, q):
        return tuple(p[q[x]] for x in range(n))

    return from_elements(elements, mul, name=f"S{n}", kind="symmetric", params=(n,),
                         labels=["".join(map(str, p)) for p in elements], perm_rep=elements)


def heisenberg_mod(n: int) -> FiniteGroup:
    """Unitriangular 3x3 matrices over Z/n, order n^3.

    ``(a, b, c)`` stands for ``[[1, a, c], [0, 1, b], [0, 0, 1]]`` and has
    index ``a*n*n + b*n + c``.
    """
    _require(isinstance(n, int) and n >= 1, f"heisenberg group needs n >= 1, got {n!r}")
    _require(n ** 3 <= MAX_ORDER, f"heisenberg_mod({n}) exceeds the table limit {MAX_ORDER}")
    elements = list(itertools.product(range(n), repeat=3))

    def mul(x, y):
        a, b, c = x
        a2, b2, c2 = y
        return ((a + a2) % n, (b + b2) % n, (c + c2 + a * b2) % n)

    return from_elements(elements, mul, name=f"H(Z{n})", kind="heisenberg_mod", params=(n,),
                         labels=["(%d,%d,%d)" % x for x in elements])


def heisenberg_coords(G: FiniteGroup, g: int) -> tuple[int, int, int]:
    _require(G.kind == "heisenberg_mod", f"{G.name} is not a Heisenberg group")
    n = G.params[0]
    return g // (n * n), (g // n) % n, g % n


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """``G x H`` with element ``(g, h)`` at index ``g*|H| + h``."""
    _require(isinstance(G, FiniteGroup) and isinstance(H, FiniteGroup),
             "direct products are only formed of finite groups")
    m, n = G.order, H.order
    _require(m * n <= MAX_ORDER, f"{G.name} x {H.name} exceeds the table limit {MAX_ORDER}")
    table = (G.table[:, None, :, None] * n + H.table[None, :, None, :]).reshape(m * n, m * n)
    inverses = (G.inverses[:, None] * n + H.inverses[None, :]).reshape(-1)
    labels = tuple(f"({G.label(g)},{H.label(h)})" for g in range(m) for h in range(n))
    perm_rep = None
    if G.perm_rep is not None and H.perm_rep is not None:
        pg, ph = G.perm_rep, H.perm_rep
        shift = pg.shape[1]
        perm_rep = np.concatenate(
            [np.repeat(pg, n, axis=0), np.tile(ph, (m, 1)) + shift], axis=1)
    P = FiniteGroup(table, G.identity * n + H.identity, inverses, labels,
                    f"{G.name}x{H.name}", "direct_product", (G, H), perm_rep)
    check = validate_group(P)
    if not check:
        raise GroupError(f"{P.name}: {check.law} fails at {check.witness}")
    return P


def build_group(kind: str, **params) -> GroupRef:
    """Construct a group by name, e.g. ``build_group("cyclic", n=4)``."""
    if kind == "integer":
        _require(not params, "the integer group takes no parameters")
        return INTEGERS
    if kind == "direct_product":
        factors = params.get("factors")
        _require(factors is not None and len(factors) == 2 and set(params) == {"factors"},
                 "direct_product needs exactly two factors")
        return direct_product(*factors)
    makers = {"cyclic": cyclic, "dihedral": dihedral, "symmetric": symmetric,
              "heisenberg_mod": heisenberg_mod}
    _require(kind in makers, f"unknown group kind {kind!r}")
    _require(set(params) == {"n"}, f"{kind} takes exactly one parameter 'n'")
    return makers[kind](params["n"])
