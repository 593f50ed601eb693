"""Acceptance criteria, runnable from pytest or ``l1crossed selftest``.

Each ``criterion_*`` function returns a :class:`Criterion` holding the
measured worst-case numbers next to the tolerance they were held to.
"""

from __future__ import annotations

import filecmp
import tempfile
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .algebra import AlgebraContext, InnerAction, schrodinger_unitaries
from .crossed import (CrossedSystem, from_dynamical_system, group_algebra, random_element,
                      random_selfadjoint, sample_rng, standard_systems)
from .groups import INTEGERS, cyclic, dihedral, direct_product, heisenberg_mod, symmetric
from .morphisms import check_composite, check_regular_embedding, check_trivialization
from .spectral import (dft_spectrum_oracle, evaluation_reps, gelfand_radius, match_distance,
                       spectrum_finite, verify_hermitian, verify_symmetric)

SEED = 1
SAMPLES = 200


@dataclass
class Criterion:
    number: int
    name: str
    passed: bool
    measured: dict = field(default_factory=dict)

    def line(self) -> str:
        values = ", ".join(f"{k}={_fmt(v)}" for k, v in self.measured.items())
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number}. {self.name}: {values}"


def _fmt(v) -> str:
    return f"{v:.3e}" if isinstance(v, float) else str(v)


def heisenberg_inner_system() -> CrossedSystem:
    G = heisenberg_mod(2)
    return CrossedSystem(InnerAction(G, AlgebraContext.full(2), schrodinger_unitaries(G)),
                         name="l1(H(Z2), M_2, Ad schrodinger)")


def example_config_path() -> Path:
    return Path(str(resources.files("l1crossed") / "configs" / "example.json"))


def criterion_1() -> Criterion:
    worst = {}
    for key, system in standard_systems().items():
        r = verify_hermitian(system, SAMPLES, SEED, 1e-8)
        worst[key] = r.witnesses["max_imag_normalized"] if r.passed else f"{r.status}"
    ok = all(isinstance(v, float) and v <= 1e-8 for v in worst.values())
    return Criterion(1, "hermitian: max |Im sp(x)|/(1+|x|) <= 1e-8", ok, worst)


def criterion_2() -> Criterion:
    measured, ok = {}, True
    for key, system in standard_systems().items():
        r = verify_symmetric(system, SAMPLES, SEED, 1e-8)
        ok &= r.passed
        measured[f"{key}.min_re"] = r.witnesses["min_real_normalized"]
        measured[f"{key}.max_im"] = r.witnesses["max_imag_normalized"]
    return Criterion(2, "symmetric: sp(x x*) in [0, inf) within 1e-8 (1+|x|^2)", ok, measured)


def criterion_3() -> Criterion:
    measured, ok = {}, True
    systems = {"Z4_M2_inner": standard_systems()["Z4_M2_inner"], "H2_M2_inner": heisenberg_inner_system()}
    for key, system in systems.items():
        r = check_trivialization(system, SAMPLES, SEED)
        ok &= r.passed
        for k in ("isometry_defect", "homomorphism_defect", "star_defect", "roundtrip_defect"):
            measured[f"{key}.{k}"] = r.witnesses[k]
    return Criterion(3, "inner-action trivialization is an isometric *-isomorphism", ok, measured)


def criterion_4() -> Criterion:
    measured, ok = {}, True
    for key, system in standard_systems().items():
        r = check_regular_embedding(system, SAMPLES, SEED)
        equi = r.witnesses.get("hat_equivariance", float("inf"))
        ok &= r.passed and equi <= 1e-12 and r.witnesses["isometry_defect"] <= 1e-10
        measured[f"{key}.equivariance"] = equi
        measured[f"{key}.rho_isometry"] = r.witnesses.get("isometry_defect", float("inf"))
    return Criterion(4, "regular covariant pair: equivariance <= 1e-12, rho isometry <= 1e-10", ok, measured)


def criterion_5() -> Criterion:
    measured, ok = {}, True
    for key, system in standard_systems().items():
        r = check_composite(system, SAMPLES, SEED)
        ok &= r.passed
        measured[f"{key}.norm"] = r.witnesses["isometry_defect"]
        measured[f"{key}.star"] = r.witnesses["star_defect"]
    return Criterion(5, "composite embedding preserves norm and * within 1e-10", ok, measured)


def criterion_6() -> Criterion:
    measured = {}
    for n in (2, 3, 4, 8, 16):
        system = group_algebra(cyclic(n))
        worst = 0.0
        for i in range(50):
            x = random_element(system, sample_rng(SEED, i))
            worst = max(worst, match_distance(spectrum_finite(x).eigenvalues, dft_spectrum_oracle(x).eigenvalues))
        measured[f"Z{n}"] = worst
    return Criterion(6, "left-mult spectrum matches DFT oracle within 1e-9", all(v <= 1e-9 for v in measured.values()),
                     measured)


def finite_group_catalog() -> list:
    groups = [cyclic(n) for n in range(1, 9)] + [dihedral(n) for n in range(1, 7)]
    groups += [symmetric(n) for n in range(1, 5)] + [heisenberg_mod(2), heisenberg_mod(3)]
    groups += [direct_product(cyclic(2), cyclic(3)), direct_product(cyclic(2), dihedral(3))]
    return groups


def criterion_7() -> Criterion:
    failures = 0
    checked = 0
    for G in finite_group_catalog():
        system = group_algebra(G)
        deltas = [system.delta(g) for g in G.elements()]
        for g in G.elements():
            failures += deltas[g].star() != deltas[G.inv(g)]
            failures += deltas[g].norm() != 1.0
            for h in G.elements():
                failures += (deltas[g] @ deltas[h]) != deltas[G.mul(g, h)]
        checked += 1
    conj = 0.0
    systems = dict(standard_systems(), H2_M2_inner=heisenberg_inner_system(),
                   Z6_C5_dyn=from_dynamical_system(5, [1, 0, 3, 4, 2], "cyclic"))
    for system in systems.values():
        G, ctx = system.group, system.ctx
        for g in G.elements():
            for a in ctx.basis():
                lhs = system.delta(g) @ system.embed_coeff(a) @ system.delta(G.inv(g))
                conj = max(conj, (lhs - system.embed_coeff(system.action.apply(g, a))).norm())
    ok = failures == 0 and conj <= 1e-12
    return Criterion(7, "delta identities exact; conjugation identity within 1e-12", ok,
                     {"groups": checked, "exact_failures": failures, "conjugation_defect": conj})


def criterion_8() -> Criterion:
    system = from_dynamical_system(5, [1, 0, 3, 4, 2], "integer")
    herm = imag = 0.0
    margin = float("inf")
    for i in range(50):
        x = random_selfadjoint(system, SEED, index=i, window=3)
        reps = evaluation_reps(x, 64)
        herm = max(herm, max(r.hermitian_defect for r in reps))
        imag = max(imag, max(r.spectrum.max_imag for r in reps) / (1 + x.norm()))
        margin = min(margin, gelfand_radius(x, 6)[-1] - max(r.spectrum.radius for r in reps))
    integers = group_algebra(INTEGERS)
    wiener = (integers.delta(1) + integers.delta(-1)) * 0.5
    bounds = gelfand_radius(wiener, 6)
    ok = herm <= 1e-12 and imag <= 1e-8 and margin >= -1e-9 and all(b == 1.0 for b in bounds)
    return Criterion(8, "Z-dynamics evidence and Wiener radius", ok,
                     {"hermitian_defect": herm, "max_imag_normalized": imag, "min_radius_margin": margin,
                      "wiener_bounds_equal_one": all(b == 1.0 for b in bounds)})


def criterion_9() -> Criterion:
    from .cli import main
    config = example_config_path()
    with tempfile.TemporaryDirectory() as tmp:
        a, b = Path(tmp) / "a.json", Path(tmp) / "b.json"
        codes = (main(["verify", "--config", str(config), "--out", str(a)]),
                 main(["verify", "--config", str(config), "--out", str(b)]))
        same = filecmp.cmp(a, b, shallow=False)
    return Criterion(9, "verify on the example config is byte-reproducible", same and codes == (0, 0),
                     {"identical": same, "exit_codes": codes})


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8, criterion_9]


def run_all() -> list[Criterion]:
    return [c() for c in CRITERIA]
