"""Scenario configuration: strict JSON parsing and execution."""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field
from typing import Any, Optional

from .algebra import (AlgebraContext, AlgebraError, DynamicsAction, InnerAction, PermutationAction,
                      TrivialAction, cyclic_inner_action, natural_permutation_action,
                      parse_complex_literal, schrodinger_unitaries, validate_action)
from .crossed import (CrossedSystem, SupportOverflow, elements_from_literal, from_dynamical_system)
from .groups import GroupError, build_group
from .morphisms import morphism_checks
from .report import CheckResult, VerificationReport
from .spectral import DimensionCapExceeded, dynamics_evidence, spectrum_report, verify_hermitian, verify_symmetric

CHECKS = ("hermitian", "symmetric", "morphisms", "dynamics-evidence", "spectrum-of")
DEFAULTS = {"samples": 100, "seed": 0, "tol": 1e-8, "window": 3, "omega_count": 64,
            "gelfand_levels": 6, "output": {}}


class ConfigError(ValueError):
    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


class ResourceError(RuntimeError):
    pass


@dataclass(frozen=True)
class ScenarioConfig:
    system: dict
    checks: list
    samples: int = 100
    seed: int = 0
    tol: float = 1e-8
    window: int = 3
    omega_count: int = 64
    gelfand_levels: int = 6
    # output paths are where the report goes, not what it says: excluded from
    # equality and from the echo so reports do not depend on them
    output: dict = field(default_factory=dict, compare=False)

    def to_dict(self, *, with_output: bool = True) -> dict:
        return {"system": copy.deepcopy(self.system), "checks": copy.deepcopy(self.checks),
                "samples": self.samples, "seed": self.seed, "tol": self.tol, "window": self.window,
                "omega_count": self.omega_count, "gelfand_levels": self.gelfand_levels,
                **({"output": dict(self.output)} if with_output else {})}

    def replace(self, **changes) -> "ScenarioConfig":
        data = self.to_dict()
        data.update({k: v for k, v in changes.items() if v is not None})
        return parse_config_dict(data)


# -- parsing ---------------------------------------------------------------------


def _keys(obj, path: str, required: set, optional: set = frozenset()) -> None:
    if not isinstance(obj, dict):
        raise ConfigError("expected an object", path)
    unknown = set(obj) - required - set(optional)
    if unknown:
        key = sorted(unknown)[0]
        raise ConfigError(f"unknown key {key!r}", f"{path}.{key}")
    missing = required - set(obj)
    if missing:
        raise ConfigError(f"missing key {sorted(missing)[0]!r}", path)


def _int(value, path: str, lo: Optional[int] = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"expected an integer, got {value!r}", path)
    if lo is not None and value < lo:
        raise ConfigError(f"must be >= {lo}, got {value}", path)
    return value


def parse_config(text: str) -> ScenarioConfig:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})") from None
    return parse_config_dict(data)


def parse_config_dict(data: Any) -> ScenarioConfig:
    _keys(data, "$", {"system", "checks"}, set(DEFAULTS))
    merged = {**copy.deepcopy(DEFAULTS), **copy.deepcopy(data)}
    samples = _int(merged["samples"], "$.samples", 1)
    seed = _int(merged["seed"], "$.seed")
    if not -(2 ** 63) <= seed < 2 ** 64:
        raise ConfigError("seed must fit in 64 bits", "$.seed")
    tol = merged["tol"]
    if isinstance(tol, bool) or not isinstance(tol, (int, float)) or not tol > 0:
        raise ConfigError(f"tol must be a positive number, got {tol!r}", "$.tol")
    window = _int(merged["window"], "$.window", 0)
    omega_count = _int(merged["omega_count"], "$.omega_count", 1)
    levels = _int(merged["gelfand_levels"], "$.gelfand_levels", 0)
    _keys(merged["output"], "$.output", set(), {"report", "csv"})
    for key, value in merged["output"].items():
        if not isinstance(value, str):
            raise ConfigError("expected a path string", f"$.output.{key}")

    system = build_system(merged["system"])  # validates the system spec
    checks = merged["checks"]
    if not isinstance(checks, list):
        raise ConfigError("expected a list of checks", "$.checks")
    for i, check in enumerate(checks):
        path = f"$.checks[{i}]"
        if isinstance(check, dict):
            _keys(check, path, {"spectrum-of"})
            try:
                elements_from_literal(system, check["spectrum-of"])
            except (ValueError, TypeError, AlgebraError) as exc:
                raise ConfigError(str(exc), f"{path}.spectrum-of") from None
            continue
        if check not in CHECKS or check == "spectrum-of":
            raise ConfigError(f"unknown check {check!r}; expected one of {', '.join(CHECKS)}", path)
        if check in ("hermitian", "symmetric", "morphisms") and not system.is_finite:
            raise ConfigError(f"check {check!r} needs a finite group", path)
        if check == "dynamics-evidence" and not isinstance(system.action, DynamicsAction):
            raise ConfigError("dynamics-evidence needs a dynamical system over Z", path)
    return ScenarioConfig(merged["system"], checks, samples, seed, float(tol), window, omega_count,
                          levels, merged["output"])


def _group(spec, path: str):
    _keys(spec, path, {"kind"}, {"n", "factors"})
    params = {k: v for k, v in spec.items() if k != "kind"}
    if "factors" in params:
        factors = params["factors"]
        if not isinstance(factors, list):
            raise ConfigError("expected a list of group specs", f"{path}.factors")
        params["factors"] = [_group(f, f"{path}.factors[{i}]") for i, f in enumerate(factors)]
    try:
        return build_group(spec["kind"], **params)
    except (GroupError, TypeError) as exc:
        raise ConfigError(str(exc), path) from None


def _context(spec, path: str) -> AlgebraContext:
    _keys(spec, path, {"type"}, {"dim", "points"})
    kind = spec["type"]
    try:
        if kind == "scalar":
            _keys(spec, path, {"type"})
            return AlgebraContext.full(1)
        if kind == "full":
            _keys(spec, path, {"type", "dim"})
            return AlgebraContext.full(_int(spec["dim"], f"{path}.dim", 1))
        if kind == "diagonal":
            _keys(spec, path, {"type", "points"})
            return AlgebraContext.diagonal(_int(spec["points"], f"{path}.points", 1))
    except AlgebraError as exc:
        raise ConfigError(str(exc), path) from None
    raise ConfigError(f"unknown context type {kind!r}", f"{path}.type")


def _action(spec, group, ctx: AlgebraContext, path: str):
    _keys(spec, path, {"type"}, {"unitaries", "generator", "representation", "perms", "sigma"})
    kind = spec["type"]
    try:
        if kind == "trivial":
            _keys(spec, path, {"type"})
            return TrivialAction(group, ctx)
        if kind == "inner":
            if len(spec) != 2:
                raise ConfigError("inner actions need exactly one of unitaries, generator, representation", path)
            if "unitaries" in spec:
                return InnerAction(group, ctx, parse_complex_literal(spec["unitaries"]))
            if "generator" in spec:
                return cyclic_inner_action(group, ctx, parse_complex_literal(spec["generator"]))
            if spec.get("representation") == "schrodinger":
                if group.kind != "heisenberg_mod":
                    raise ConfigError("the schrodinger representation needs a heisenberg_mod group", path)
                return InnerAction(group, ctx, schrodinger_unitaries(group))
            raise ConfigError("unknown inner action description", path)
        if kind == "permutation":
            _keys(spec, path, {"type", "perms"})
            if spec["perms"] == "natural":
                return natural_permutation_action(group, ctx)
            return PermutationAction(group, ctx, spec["perms"])
        if kind == "dynamics":
            _keys(spec, path, {"type", "sigma"})
            return DynamicsAction(ctx, spec["sigma"])
    except (AlgebraError, GroupError, ValueError, TypeError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc), path) from None
    raise ConfigError(f"unknown action type {kind!r}", f"{path}.type")


def build_system(spec) -> CrossedSystem:
    """Turn a system spec (group/context/action or dynamics/flavor) into a system."""
    path = "$.system"
    if isinstance(spec, dict) and "dynamics" in spec:
        _keys(spec, path, {"dynamics"}, {"flavor"})
        dyn = spec["dynamics"]
        _keys(dyn, f"{path}.dynamics", {"points", "sigma"})
        points = _int(dyn["points"], f"{path}.dynamics.points", 1)
        sigma = dyn["sigma"]
        if not isinstance(sigma, list) or not all(isinstance(s, int) and not isinstance(s, bool) for s in sigma):
            raise ConfigError("sigma must be a list of integers", f"{path}.dynamics.sigma")
        try:
            return from_dynamical_system(points, sigma, spec.get("flavor", "integer"))
        except ValueError as exc:
            raise ConfigError(str(exc), path) from None
    _keys(spec, path, {"group", "context", "action"})
    group = _group(spec["group"], f"{path}.group")
    ctx = _context(spec["context"], f"{path}.context")
    action = _action(spec["action"], group, ctx, f"{path}.action")
    check = validate_action(action)
    if not check:
        raise ConfigError(f"action fails {check.law} at {check.witness} (defect {check.defect:.3e})",
                          f"{path}.action")
    return CrossedSystem(action)


# -- execution -------------------------------------------------------------------


def run_scenario(cfg: ScenarioConfig, *, keep_spectra: bool = False) -> VerificationReport:
    """Run every configured check in order; failing checks are recorded, not raised."""
    system = build_system(cfg.system)
    results: list[CheckResult] = []
    try:
        for check in cfg.checks:
            if isinstance(check, dict):
                x = elements_from_literal(system, check["spectrum-of"])
                results.append(spectrum_report(x, omega_count=cfg.omega_count, n_max=cfg.gelfand_levels))
            elif check == "hermitian":
                results.append(verify_hermitian(system, cfg.samples, cfg.seed, cfg.tol, keep_spectra=keep_spectra))
            elif check == "symmetric":
                results.append(verify_symmetric(system, cfg.samples, cfg.seed, cfg.tol, keep_spectra=keep_spectra))
            elif check == "morphisms":
                results.extend(morphism_checks(system, cfg.samples, cfg.seed))
            elif check == "dynamics-evidence":
                results.append(dynamics_evidence(system, cfg.samples, cfg.seed, window=cfg.window,
                                                 omega_count=cfg.omega_count, n_max=cfg.gelfand_levels,
                                                 tol=cfg.tol, keep_spectra=keep_spectra))
    except (DimensionCapExceeded, SupportOverflow, MemoryError) as exc:
        raise ResourceError(str(exc)) from exc
    return VerificationReport(cfg.to_dict(with_output=False), results, cfg.seed)

