"""Named, reproducible verification scenarios.

Every scenario maps a :class:`RunConfig` to a :class:`Report`. The registry
is the single source of truth for the command line: names are unique, the
listing is sorted, and ``run_all`` executes everything in name order so that
two runs with the same configuration produce identical output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import gpt
from .fermion import build_modes, check_car, quadrature_sign_check
from .independence import (
    counterexample_scenario,
    counterexample_state,
    independence_verdict,
    parity_twirl_group,
    product_residual,
    twirl,
)
from .linops import QuantumState, herm_eigen, is_density
from .report import AggregateReport, CheckResult, Report

__all__ = [
    "RunConfig",
    "ScenarioDescriptor",
    "UnknownScenarioError",
    "list_scenarios",
    "run_all",
    "run_scenario",
]

FORMATS = ("text", "json")


@dataclass(frozen=True)
class RunConfig:
    """Execution parameters shared by all scenarios."""

    tolerance: float = 1e-9
    seed: int = 0
    format: str = "text"
    output_path: str | None = None

    def __post_init__(self) -> None:
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")


@dataclass(frozen=True)
class ScenarioDescriptor:
    name: str
    module: str
    parameters: dict
    description: str


class UnknownScenarioError(KeyError):
    pass


_REGISTRY: dict[str, tuple[ScenarioDescriptor, Callable[[RunConfig], Report]]] = {}


def _register(name: str, module: str, parameters: dict, description: str):
    def wrap(fn: Callable[[RunConfig], Report]):
        if name in _REGISTRY:
            raise RuntimeError(f"duplicate scenario name {name}")
        _REGISTRY[name] = (
            ScenarioDescriptor(name, module, parameters, description),
            fn,
        )
        return fn

    return wrap


def list_scenarios() -> list[ScenarioDescriptor]:
    """All registered scenarios, sorted by name."""
    return [_REGISTRY[name][0] for name in sorted(_REGISTRY)]


def run_scenario(name: str, cfg: RunConfig | None = None) -> Report:
    cfg = cfg or RunConfig()
    try:
        _, fn = _REGISTRY[name]
    except KeyError:
        raise UnknownScenarioError(name) from None
    return fn(cfg)


def run_all(cfg: RunConfig | None = None) -> AggregateReport:
    cfg = cfg or RunConfig()
    reports = [run_scenario(name, cfg) for name in sorted(_REGISTRY)]
    return AggregateReport(reports, tol=cfg.tolerance, seed=cfg.seed)


_CAR_SIZES = (2, 3, 4, 5, 6)


@_register(
    "car-check",
    "fermion",
    {"modes": list(_CAR_SIZES)},
    "anticommutation relations of the string-ordered mode operators",
)
def _run_car(cfg: RunConfig) -> Report:
    checks: list[CheckResult] = []
    for n in _CAR_SIZES:
        sub = check_car(build_modes(n).lowering, tol=cfg.tolerance)
        for c in sub.checks:
            checks.append(
                CheckResult(f"n={n}/{c.name}", c.passed, c.residual, c.witness)
            )
    return Report("car-check", checks, tol=cfg.tolerance, seed=cfg.seed)


@_register(
    "quadrature-sign",
    "fermion",
    {"modes": 2},
    "sign of a one-mode quadrature applied through the string ordering versus factorwise",
)
def _run_quadrature(cfg: RunConfig) -> Report:
    sub = quadrature_sign_check(build_modes(2))
    return Report("quadrature-sign", sub.checks, tol=cfg.tolerance, seed=cfg.seed)


@_register(
    "twirl-identity",
    "independence",
    {},
    "parity twirl of the correlated two-mode state is maximally mixed",
)
def _run_twirl(cfg: RunConfig) -> Report:
    ms = build_modes(2)
    rho = counterexample_state()
    group = parity_twirl_group(ms)
    twirled = twirl(rho, group)
    res_id = float(np.max(np.abs(twirled.op - np.eye(4) / 4.0)))
    twice = twirl(twirled, group)
    res_idem = float(np.max(np.abs(twice.op - twirled.op)))
    neg = max(0.0, -float(np.linalg.eigvalsh(twirled.op)[0]))
    checks = [
        CheckResult("equals-maximally-mixed", res_id <= cfg.tolerance, res_id),
        CheckResult("idempotent", res_idem <= cfg.tolerance, res_idem),
        CheckResult("preserves-density", is_density(twirled.op, cfg.tolerance), neg),
    ]
    return Report("twirl-identity", checks, tol=cfg.tolerance, seed=cfg.seed)


@_register(
    "counterexample",
    "independence",
    {},
    "eight-step audit of the correlated two-mode state: superselection, twirl, independence, separability",
)
def _run_counterexample(cfg: RunConfig) -> Report:
    report = counterexample_scenario(tol=cfg.tolerance)
    return Report("counterexample", report.checks, tol=cfg.tolerance, seed=cfg.seed)


_EXPECTED_DIMS = {
    gpt.COMPLEX_QUBIT_PAIR: (16, 16, 0, True),
    gpt.REAL_QUBIT_PAIR: (10, 9, 1, False),
    gpt.FERMI_TWO_MODES: (8, 4, 4, False),
}


def _tomography_report(kind: str, cfg: RunConfig) -> Report:
    cm = gpt.build_instance(kind)
    exp_dim, exp_rank, exp_hol, exp_verdict = _EXPECTED_DIMS[kind]
    span = gpt.product_span(cm)
    hol = gpt.holistic_subspace(cm)
    verdict = gpt.is_locally_tomographic(cm)
    invisibility = 0.0
    for v in hol.vectors:
        h = cm.from_coords(v)
        for ea, eb in cm.effect_pairs():
            invisibility = max(
                invisibility, abs(float(np.trace(np.kron(ea, eb).conj().T @ h).real))
            )
    checks = [
        CheckResult(
            "composite-dimension",
            cm.composite_dim == exp_dim,
            float(abs(cm.composite_dim - exp_dim)),
        ),
        CheckResult(
            "product-span-rank", span.dim == exp_rank, float(abs(span.dim - exp_rank))
        ),
        CheckResult(
            "holistic-dimension", hol.dim == exp_hol, float(abs(hol.dim - exp_hol))
        ),
        CheckResult(
            "decomposition-complete",
            span.dim + hol.dim == cm.composite_dim,
            float(abs(span.dim + hol.dim - cm.composite_dim)),
        ),
        CheckResult(
            "local-tomography-verdict",
            verdict == exp_verdict,
            0.0 if verdict == exp_verdict else 1.0,
        ),
        CheckResult("holistic-invisibility", invisibility <= 1e-10, invisibility),
    ]
    return Report(f"gpt-tomography-{kind}", checks, tol=cfg.tolerance, seed=cfg.seed)


for _kind in gpt.INSTANCE_KINDS:
    _register(
        f"gpt-tomography-{_kind}",
        "gpt",
        {"instance": _kind},
        "dimension table and local-tomography verdict",
    )(lambda cfg, _k=_kind: _tomography_report(_k, cfg))


@_register(
    "tomographic-equivalence",
    "gpt",
    {"instance": gpt.COMPLEX_QUBIT_PAIR, "trials": 100},
    "operational independence coincides with product form on the locally tomographic instance",
)
def _run_equivalence(cfg: RunConfig) -> Report:
    cm = gpt.build_instance(gpt.COMPLEX_QUBIT_PAIR)
    report = gpt.check_independence_equivalence(
        cm, trials=100, seed=cfg.seed, tol=cfg.tolerance
    )
    return Report(
        "tomographic-equivalence", report.checks, tol=cfg.tolerance, seed=cfg.seed
    )


def _witness_report(kind: str, cfg: RunConfig) -> Report:
    cm = gpt.build_instance(kind)
    dim = cm.sys_a.side * cm.sys_b.side
    base = np.eye(dim, dtype=cm.basis[0].dtype) / dim
    witness, report = gpt.holistic_witness(cm, base, tol=cfg.tolerance)
    checks = list(report.checks)
    if witness is not None and kind == gpt.FERMI_TWO_MODES:
        # The witness must be the correlated two-mode state itself, and the
        # independence module must classify it the same way the audit does.
        rho = counterexample_state()
        res = float(np.max(np.abs(witness - rho.op)))
        checks.append(CheckResult("matches-counterexample-state", res <= cfg.tolerance, res))
        verdict = independence_verdict(
            build_modes(2), QuantumState(witness, (2, 2)), ((0,), (1,)), cfg.tolerance
        )
        checks.append(
            CheckResult(
                "verdict-operationally-independent",
                verdict.operationally_independent,
                verdict.max_residual,
            )
        )
        prod_res = product_residual(witness, (2, 2))
        checks.append(CheckResult("verdict-not-product", not verdict.product_state, prod_res))
        checks.append(
            CheckResult(
                "verdict-not-independently-preparable",
                not verdict.independently_preparable,
                prod_res,
            )
        )
    if witness is not None and kind == gpt.REAL_QUBIT_PAIR:
        spectrum = herm_eigen(witness.astype(complex))
        res = float(np.max(np.abs(spectrum - np.array([0.0, 0.0, 0.5, 0.5]))))
        checks.append(CheckResult("witness-spectrum", res <= cfg.tolerance, res))
    return Report(f"holistic-witness-{kind}", checks, tol=cfg.tolerance, seed=cfg.seed)


for _kind in (gpt.REAL_QUBIT_PAIR, gpt.FERMI_TWO_MODES):
    _register(
        f"holistic-witness-{_kind}",
        "gpt",
        {"instance": _kind, "base": "maximally-mixed"},
        "state displaced along the holistic subspace is locally identical to the product base yet not a product",
    )(lambda cfg, _k=_kind: _witness_report(_k, cfg))
