#!/usr/bin/env python3
"""
Módulo de varredura - sistemas aleatórios com semente e auditoria em lote de veredictos e oráculos
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .classify import (
    AGREEMENT_GATE,
    PROPERTIES,
    UNDECIDED,
    ClassificationReport,
    classify_dissipative,
    classify_shift,
    classify_sss,
    horizon_checks,
    implication_audit,
)
from .sequences import EventuallyPeriodicSequence, horizon_bias
from .simulate import ORACLE_MODES, CompositionOperator, brute_force_expansivity, oracle_disagreement
from .systems import Cells, DissipativeSystem, MeasureSequence, induced_weights

logger = logging.getLogger(__name__)

DEFAULT_HORIZON = 200
DEFAULT_KSPAN = 500

# Faixa das log-razões sorteadas (núcleo e caudas)
LOG_RANGE = 2.0
MAX_TAIL_PERIOD = 4
MAX_CORE = 2
P_CHOICES = (1.0, 2.0, 3.0)

# Horizonte e amostras do oráculo de força bruta dentro da varredura
ORACLE_HORIZON = 40
ORACLE_SAMPLES = 4
ORACLE_PROPERTIES = ("PE", "E", "UPE", "UE")

# Correspondência entre condições de B_w e de μ sob w_k = ρ_{k-1}^{-1/p}
DUALITY = {"B-a": "HC", "B-b": "HD", "B-c": "GH"}


def _random_values(rng: np.random.Generator, size: int, spread: float) -> tuple:
    return tuple(float(v) for v in np.exp(rng.uniform(-spread, spread, size)))


def random_ratio(rng: np.random.Generator) -> EventuallyPeriodicSequence:
    """
    Razões eventualmente periódicas aleatórias.

    Caudas de período 1..4 e núcleo de 1..2 entradas, sempre contendo o
    índice 0, todos com log-razões uniformes em [-2, 2].
    """
    core_len = int(rng.integers(1, MAX_CORE + 1))
    return EventuallyPeriodicSequence(
        -int(rng.integers(0, core_len)),
        _random_values(rng, core_len, LOG_RANGE),
        _random_values(rng, int(rng.integers(1, MAX_TAIL_PERIOD + 1)), LOG_RANGE),
        _random_values(rng, int(rng.integers(1, MAX_TAIL_PERIOD + 1)), LOG_RANGE),
    )


def random_system(rng: np.random.Generator, label: str) -> DissipativeSystem:
    """Sistema dissipativo aleatório sem células (μ_0 = 1, p sorteado em {1, 2, 3})."""
    p = float(rng.choice(P_CHOICES))
    return DissipativeSystem(p, MeasureSequence(1, random_ratio(rng)), label=label)


def random_cell_system(rng: np.random.Generator, label: str) -> DissipativeSystem:
    """
    Sistema aleatório com 2..3 células e tabela de oscilação em até 3 índices k ≠ 0.

    Cada linha θ_{k,·} é normalizada para Σ_j β_j θ_{k,j} = μ_0 = 1; o K declarado
    fica entre K_min e 2·K_min.
    """
    m = int(rng.integers(2, 4))
    beta = rng.dirichlet(np.ones(m))
    beta = beta / beta.sum()
    ks = rng.choice([k for k in range(-3, 4) if k != 0], size=int(rng.integers(1, 4)), replace=False)
    wobble = {}
    for k in sorted(int(k) for k in ks):
        u = np.exp(rng.uniform(-1.0, 1.0, m))
        wobble[k] = tuple(float(v) for v in u / float(np.dot(beta, u)))
    k_min = max(max(t, 1 / t) for row in wobble.values() for t in row)
    ratio = random_ratio(rng)
    cells = Cells(tuple(float(b) for b in beta), wobble)
    total = float(sum(cells.beta))
    # Σβ arredondado precisa coincidir com μ_0
    return DissipativeSystem(1.0, MeasureSequence(total, ratio), cells, k_min * float(rng.uniform(1.0, 2.0)), label)


@dataclass
class SweepSummary:
    """Resultado agregado de uma varredura."""

    count: int
    seed: int
    violations: List[str] = field(default_factory=list)
    distribution: Dict[str, Counter] = field(default_factory=dict)
    reports: List[ClassificationReport] = field(default_factory=list, repr=False)

    @property
    def ok(self) -> bool:
        return not self.violations

    def undecided(self, prop: str) -> int:
        return self.distribution.get(prop, Counter()).get(UNDECIDED, 0)


def audit_system(
    system: DissipativeSystem,
    horizon: int = DEFAULT_HORIZON,
    k_span: int = DEFAULT_KSPAN,
    oracle: bool = True,
    corrupt: Optional[Callable[[ClassificationReport], None]] = None,
) -> Tuple[ClassificationReport, List[str]]:
    """
    Classifica um sistema e confere todas as propriedades cruzadas.

    Implicações, concordância exato × horizonte, coerência de expansividade
    positiva com sombreamento e SSS, transferência via pesos induzidos,
    dualidade de taxas e concordância com o oráculo de força bruta.

    Args:
        system: Sistema dissipativo
        horizon: n dos estimadores de horizonte
        k_span: Raio de varredura dos estimadores
        oracle: Executa o oráculo de força bruta
        corrupt: Gancho de teste que altera o relatório antes da auditoria

    Returns:
        (relatório, lista de violações prefixadas pelo rótulo)
    """
    report = classify_dissipative(system)
    if corrupt is not None:
        corrupt(report)
    tag = system.label or report.fingerprint
    problems = [f"{tag}: {v}" for v in implication_audit(report)]

    for check in horizon_checks(system.measures, horizon, k_span, AGREEMENT_GATE):
        if not check.agree:
            problems.append(
                f"{tag}: horizonte discorda em {check.name} (exata {check.exact:.6g}, horizonte {check.horizon:.6g}, "
                f"viés ≤ {horizon_bias(system.measures.ratio, horizon):.3g})"
            )

    if report["PE"].holds:
        if report["SSS"].status == UNDECIDED:
            problems.append(f"{tag}: SSS indeciso com PE válido")
        elif report["SSS"].holds != report["Shadowing"].holds:
            problems.append(f"{tag}: PE válido mas SSS={report.status('SSS')} e Shadowing={report.status('Shadowing')}")

    shift_sss, _, _ = classify_shift(induced_weights(system))
    if shift_sss.holds and not classify_sss(system).holds:
        problems.append(f"{tag}: SSS do shift induzido não transferido ao sistema")
    gh = report["GeneralizedHyperbolic"]
    expected = DUALITY.get(shift_sss.citation) if shift_sss.holds else None
    actual = gh.citation if gh.holds else None
    if expected != actual:
        problems.append(f"{tag}: dualidade de taxas quebrada ({shift_sss.citation} × {gh.citation})")

    if oracle:
        operator = CompositionOperator(system)
        for prop in ORACLE_PROPERTIES:
            verdict = brute_force_expansivity(operator, ORACLE_MODES[prop], ORACLE_HORIZON, ORACLE_SAMPLES, seed=0)
            if oracle_disagreement(report[prop], verdict):
                problems.append(f"{tag}: oráculo {verdict.status} contra {prop}={report.status(prop)}")
    return report, problems


def audit_sweep(
    count: int,
    seed: int,
    horizon: int = DEFAULT_HORIZON,
    k_span: int = DEFAULT_KSPAN,
    systems: Optional[Sequence[DissipativeSystem]] = None,
    oracle: bool = True,
    corrupt: Optional[Callable[[ClassificationReport], None]] = None,
) -> SweepSummary:
    """
    Gera count sistemas com semente seed (ou usa systems) e audita cada um.

    Args:
        count: Quantidade de sistemas aleatórios (≥ 1)
        seed: Semente do gerador
        horizon: n dos estimadores
        k_span: Raio dos estimadores
        systems: Sistemas explícitos em vez dos aleatórios
        oracle: Inclui o oráculo de força bruta
        corrupt: Gancho de teste aplicado a cada relatório

    Returns:
        SweepSummary com violações e distribuição de veredictos
    """
    if systems is None:
        if count < 1:
            raise ValueError("count deve ser ≥ 1")
        rng = np.random.default_rng(seed)
        width = len(str(count))
        systems = [random_system(rng, f"sys-{i:0{width}d}") for i in range(count)]
    summary = SweepSummary(len(systems), seed, distribution={prop: Counter() for prop in PROPERTIES})
    for system in sorted(systems, key=lambda s: s.label):
        report, problems = audit_system(system, horizon, k_span, oracle, corrupt)
        summary.reports.append(report)
        summary.violations.extend(problems)
        for prop, verdict in report.verdicts.items():
            summary.distribution[prop][verdict.status] += 1
    if summary.violations:
        logger.warning("varredura com %d violações", len(summary.violations))
    return summary


def exhaustive_distortion(system: DissipativeSystem) -> float:
    """K mínimo por força bruta sobre todas as uniões não vazias de células (conferência independente)."""
    if system.cells is None:
        return 1.0
    m = len(system.cells.beta)
    best = 1.0
    for mask in range(1, 2 ** m):
        members = [j for j in range(m) if mask >> j & 1]
        mass = sum(system.cells.beta[j] for j in members)
        for k in system.cells.wobble:
            scaled = sum(system.cells.beta[j] * system.cells.theta(k, j) for j in members) / mass
            best = max(best, scaled, 1 / scaled)
    return best