"""Spectra of l1 elements.

For a finite group the algebra is finite-dimensional and unital, so ``x`` is
invertible exactly when left multiplication ``L_x`` is; the eigenvalues of the
matrix of ``L_x`` are therefore the spectrum of ``x`` (with inflated
multiplicities). Systems over the integers only get evidence: Gelfand radius
bounds and the finite-dimensional evaluation representations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .algebra import DynamicsAction, TrivialAction
from .crossed import CrossedSystem, L1Element, convolve, random_element, random_selfadjoint, sample_rng
from .groups import FiniteGroup
from .report import EVIDENCE, FAIL, INCONCLUSIVE, PASS, CheckResult

DIMENSION_CAP = 4096
DEDUP_TOL = 1e-8
BACKWARD_TOL = 1e-10


class SpectralError(RuntimeError):
    """Eigensolver failure or an unsupported system."""


class DimensionCapExceeded(SpectralError, MemoryError):
    pass


@dataclass
class SpectrumResult:
    eigenvalues: np.ndarray
    method: str

    @property
    def max_imag(self) -> float:
        return float(np.max(np.abs(self.eigenvalues.imag))) if self.eigenvalues.size else 0.0

    @property
    def min_real(self) -> float:
        return float(np.min(self.eigenvalues.real)) if self.eigenvalues.size else 0.0

    @property
    def radius(self) -> float:
        return float(np.max(np.abs(self.eigenvalues))) if self.eigenvalues.size else 0.0

    def distinct(self, tol: float = DEDUP_TOL) -> np.ndarray:
        return dedup(self.eigenvalues, tol)


def dedup(values: np.ndarray, tol: float = DEDUP_TOL) -> np.ndarray:
    reps: list[complex] = []
    for lam in sorted(np.asarray(values, complex), key=lambda z: (z.real, z.imag)):
        if not any(abs(lam - r) <= tol for r in reps):
            reps.append(lam)
    return np.array(reps, dtype=complex)


def match_distance(a, b) -> float:
    """Largest distance between paired entries under the best one-to-one pairing."""
    a, b = np.asarray(a, complex), np.asarray(b, complex)
    if a.shape != b.shape:
        raise ValueError(f"multisets of different sizes {a.size} and {b.size}")
    if a.size == 0:
        return 0.0
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(np.max(cost[rows, cols]))


# -- finite systems ------------------------------------------------------------


def _require_finite(x: L1Element) -> FiniteGroup:
    G = x.system.group
    if not isinstance(G, FiniteGroup):
        raise SpectralError("left multiplication matrices need a finite group")
    return G


def left_mult_matrix(x: L1Element, cap: int = DIMENSION_CAP) -> np.ndarray:
    """Matrix of ``y -> x y`` in the basis ``{e_i delta_h}``, ordered by ``(h, i)``.

    ``e_i`` runs over matrix units (row-major) or point indicators. The block
    in row ``g`` and column ``h`` is ``M(x_k) A(alpha_k)`` with ``k = g h^-1``.
    """
    G = _require_finite(x)
    system = x.system
    ctx, action = system.ctx, system.action
    m = ctx.basis_size
    n = G.order * m
    if n > cap:
        raise DimensionCapExceeded(f"left multiplication matrix of size {n} exceeds the cap {cap}")
    L = np.zeros((G.order, m, G.order, m), complex)
    basis = ctx.basis()
    cols = np.arange(G.order)
    for k, xk in x.support.items():
        mult = ctx.mul_stack(xk, basis).reshape(m, m).T
        block = mult if isinstance(action, TrivialAction) else mult @ action.operator(k)
        L[G.table[k], :, cols, :] = block
    return L.reshape(n, n)


def eig_general(M: np.ndarray, *, check: bool = True) -> np.ndarray:
    """All eigenvalues of a dense complex matrix (LAPACK ``zgeev``).

    For ``N <= 64`` the eigenpairs are recomputed and the residuals
    ``||(M - lam) v||`` checked against ``1e-10 ||M||``.
    """
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    if M.shape[0] == 0:
        return np.zeros(0, complex)
    if not np.all(np.isfinite(M)):
        raise SpectralError("matrix has non-finite entries")
    try:
        if check and M.shape[0] <= 64:
            lam, V = np.linalg.eig(M)
            scale = max(np.linalg.norm(M, 2), 1e-300)
            resid = np.linalg.norm(M @ V - V * lam, axis=0) / np.linalg.norm(V, axis=0)
            if np.max(resid) > BACKWARD_TOL * scale + 1e-300:
                raise SpectralError(f"eigenpair residual {np.max(resid):.3e} exceeds {BACKWARD_TOL} * ||M||")
            return lam
        return np.linalg.eigvals(M)
    except np.linalg.LinAlgError as exc:
        raise SpectralError(f"eigenvalue iteration did not converge: {exc}") from exc


def spectrum_finite(x: L1Element, cap: int = DIMENSION_CAP) -> SpectrumResult:
    return SpectrumResult(eig_general(left_mult_matrix(x, cap)), "left-mult")


def dft_spectrum_oracle(x: L1Element) -> SpectrumResult:
    """Spectrum in ``l1(Z_n)`` as the values ``sum_k x_k w^{jk}`` at the n-th roots of unity."""
    system = x.system
    G = system.group
    if (not isinstance(G, FiniteGroup) or G.kind != "cyclic" or system.ctx.basis_size != 1
            or not isinstance(system.action, TrivialAction)):
        raise SpectralError("the DFT oracle needs the system (Z_n, C, trivial)")
    n = G.order
    coeffs = np.zeros(n, complex)
    for k, v in x.support.items():
        coeffs[k] = v.reshape(-1)[0]
    j = np.arange(n)
    roots = np.exp(2j * np.pi * np.outer(j, j) / n)
    return SpectrumResult(roots @ coeffs, "dft-oracle")


# -- verification -----------------------------------------------------------------


def verify_hermitian(system: CrossedSystem, samples: int, seed: int, tol: float, *,
                     cap: int = DIMENSION_CAP, keep_spectra: bool = False) -> CheckResult:
    """Real spectra for random self-adjoint elements.

    The witness is ``max |Im lam| / (1 + ||x||)`` over all samples.
    """
    if not system.is_finite:
        raise SpectralError("hermitian verification needs a finite group; use dynamics evidence")
    worst, worst_index, inconclusive = 0.0, None, []
    spectra = []
    for i in range(samples):
        x = random_selfadjoint(system, seed, index=i)
        try:
            spec = spectrum_finite(x, cap)
        except DimensionCapExceeded:
            raise
        except SpectralError:
            inconclusive.append(i)
            continue
        value = spec.max_imag / (1.0 + x.norm())
        if worst_index is None or value > worst:
            worst, worst_index = value, i
        if keep_spectra:
            spectra.append((i, spec.eigenvalues, spec.method))
    status = PASS if worst <= tol else FAIL
    if status == PASS and inconclusive:
        status = INCONCLUSIVE
    return CheckResult("hermitian", status, {
        "system": system.name, "samples": samples, "seed": seed, "tol": tol,
        "max_imag_normalized": worst, "worst_sample": worst_index, "inconclusive_samples": inconclusive,
    }, spectra)


def verify_symmetric(system: CrossedSystem, samples: int, seed: int, tol: float, *,
                     cap: int = DIMENSION_CAP, keep_spectra: bool = False) -> CheckResult:
    """Spectra of ``x x*`` in the closed right half-line for random ``x``.

    Both witnesses are normalized by ``1 + ||x||^2``.
    """
    if not system.is_finite:
        raise SpectralError("symmetry verification needs a finite group")
    min_real, max_imag = None, 0.0
    worst_index, inconclusive, spectra = None, [], []
    for i in range(samples):
        x = random_element(system, sample_rng(seed, i))
        scale = 1.0 + x.norm() ** 2
        try:
            spec = spectrum_finite(x @ x.star(), cap)
        except DimensionCapExceeded:
            raise
        except SpectralError:
            inconclusive.append(i)
            continue
        lo = spec.min_real / scale
        if min_real is None or lo < min_real:
            min_real, worst_index = lo, i
        max_imag = max(max_imag, spec.max_imag / scale)
        if keep_spectra:
            spectra.append((i, spec.eigenvalues, spec.method))
    if min_real is None:
        min_real = 0.0
    status = PASS if (min_real >= -tol and max_imag <= tol) else FAIL
    if status == PASS and inconclusive:
        status = INCONCLUSIVE
    return CheckResult("symmetric", status, {
        "system": system.name, "samples": samples, "seed": seed, "tol": tol,
        "min_real_normalized": min_real, "max_imag_normalized": max_imag,
        "worst_sample": worst_index, "inconclusive_samples": inconclusive,
    }, spectra)


# -- integer systems ----------------------------------------------------------------


def gelfand_radius(x: L1Element, n_max: int) -> list[float]:
    """Upper bounds ``||x^(2^k)||^(1/2^k)`` for ``k = 0..n_max`` on the spectral radius.

    Powers are formed without relative pruning: dropping small coefficients
    would shrink the norms and the bounds would stop being upper bounds.
    """
    bounds = [x.norm()]
    power = x
    for k in range(1, n_max + 1):
        if power.is_zero():
            bounds.append(0.0)
            continue
        power = convolve(power, power, prune_rtol=0.0)
        bounds.append(power.norm() ** (1.0 / 2 ** k))
    return bounds


@dataclass
class EvaluationRep:
    omega: complex
    matrix: np.ndarray
    spectrum: SpectrumResult
    star_defect: float
    hermitian_defect: float


def evaluation_matrix(x: L1Element, omega: complex) -> np.ndarray:
    """``pi_omega(f delta_n) = diag(f) (omega P)^n`` with ``P e_x = e_{sigma(x)}``."""
    action = x.system.action
    if not isinstance(action, DynamicsAction):
        raise SpectralError("evaluation representations need a system built from (X, sigma)")
    n_pts = x.system.ctx.dim
    out = np.zeros((n_pts, n_pts), complex)
    cols = np.arange(n_pts)
    for n, f in x.support.items():
        Pn = np.zeros((n_pts, n_pts), complex)
        Pn[action.power(n), cols] = 1.0
        out += (omega ** n) * (f[:, None] * Pn)
    return out


def evaluation_reps(x: L1Element, omega_count: int = 64) -> list[EvaluationRep]:
    """Evaluate ``x`` in ``pi_omega`` at ``omega_count`` equally spaced points of the circle."""
    xs = x.star()
    reps = []
    for j in range(omega_count):
        omega = np.exp(2j * np.pi * j / omega_count)
        M = evaluation_matrix(x, omega)
        star_defect = float(np.max(np.abs(evaluation_matrix(xs, omega) - M.conj().T), initial=0.0))
        herm = float(np.max(np.abs(M - M.conj().T), initial=0.0))
        reps.append(EvaluationRep(complex(omega), M, SpectrumResult(eig_general(M), "evaluation-rep"),
                                  star_defect, herm))
    return reps


def dynamics_evidence(system: CrossedSystem, samples: int, seed: int, *, window: int = 3,
                      omega_count: int = 64, n_max: int = 6, tol: float = 1e-8,
                      keep_spectra: bool = False) -> CheckResult:
    """Evidence for real spectra over ``Z``: evaluation representations and Gelfand bounds.

    Always reported with status ``evidence``; the flags in the witnesses say
    whether every sampled representation looked hermitian with real spectrum.
    """
    if not isinstance(system.action, DynamicsAction):
        raise SpectralError("dynamics evidence needs a system over Z built from (X, sigma)")
    max_herm = max_star = max_imag = 0.0
    min_margin = None
    spectra = []
    for i in range(samples):
        x = random_selfadjoint(system, seed, index=i, window=window)
        reps = evaluation_reps(x, omega_count)
        radius = gelfand_radius(x, n_max)[-1]
        scale = 1.0 + x.norm()
        for j, rep in enumerate(reps):
            max_herm = max(max_herm, rep.hermitian_defect)
            max_star = max(max_star, rep.star_defect)
            max_imag = max(max_imag, rep.spectrum.max_imag / scale)
            if keep_spectra:
                spectra.append((i * omega_count + j, rep.spectrum.eigenvalues, rep.spectrum.method))
        margin = radius - max(rep.spectrum.radius for rep in reps)
        min_margin = margin if min_margin is None else min(min_margin, margin)
    dyn = system.dynamics
    return CheckResult("dynamics-evidence", EVIDENCE, {
        "system": system.name, "samples": samples, "seed": seed, "window": window,
        "omega_count": omega_count, "gelfand_levels": n_max,
        "orbits": [len(c) for c in dyn.orbits] if dyn else None,
        "max_hermitian_defect": max_herm, "max_star_defect": max_star,
        "max_imag_normalized": max_imag,
        "min_radius_margin": 0.0 if min_margin is None else min_margin,
        "all_hermitian": max_herm <= 1e-12, "all_real": max_imag <= tol,
        "radius_consistent": min_margin is None or min_margin >= -1e-9,
    }, spectra)


def spectrum_report(x: L1Element, *, omega_count: int = 64, n_max: int = 6,
                    cap: int = DIMENSION_CAP) -> CheckResult:
    """Spectrum of a single element: exact for finite groups, evidence over ``Z``."""
    spectra = []
    if x.system.is_finite:
        spec = spectrum_finite(x, cap)
        spectra.append((0, spec.eigenvalues, spec.method))
        witnesses = {"method": spec.method, "dimension": int(spec.eigenvalues.size),
                     "eigenvalues": spec.eigenvalues.tolist(), "distinct": spec.distinct().tolist(),
                     "max_imag": spec.max_imag, "min_real": spec.min_real, "radius": spec.radius}
    else:
        reps = evaluation_reps(x, omega_count)
        for j, rep in enumerate(reps):
            spectra.append((j, rep.spectrum.eigenvalues, rep.spectrum.method))
        bounds = gelfand_radius(x, n_max)
        witnesses = {"method": "evaluation-rep", "omega_count": omega_count,
                     "max_imag": max(r.spectrum.max_imag for r in reps),
                     "max_evaluation_radius": max(r.spectrum.radius for r in reps),
                     "gelfand_bounds": bounds, "gelfand_level": n_max}
    witnesses["norm"] = x.norm()
    return CheckResult("spectrum-of", EVIDENCE, witnesses, spectra)

