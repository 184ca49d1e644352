#!/usr/bin/env python3
"""
Módulo de sistemas - composição dissipativa com distorção limitada, sistemas atômicos e shifts ponderados
"""

import hashlib
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from .sequences import (
    EventuallyPeriodicSequence,
    Number,
    geometric_mean,
    log_sum,
)

logger = logging.getLogger(__name__)

# Tolerância relativa das somas de partição das células
PARTITION_TOL = 1e-12


class InvalidSystemError(ValueError):
    """Sistema viola um invariante de construção."""


@dataclass(frozen=True)
class MeasureSequence:
    """
    Medidas μ_k = μ(f^k(W)) apresentadas por razões ρ_k = μ_{k+1} / μ_k.

    Args:
        mu0: μ(W) > 0
        ratio: Sequência eventualmente periódica das razões
    """

    mu0: Number
    ratio: EventuallyPeriodicSequence

    def __post_init__(self):
        if not (self.mu0 > 0) or not math.isfinite(float(self.mu0)):
            raise InvalidSystemError(f"mu0 deve ser positivo e finito, recebido {self.mu0}")

    def log_measures(self, lo: int, hi: int) -> np.ndarray:
        """log μ_k para k em [lo, hi], ancorado em log μ_0."""
        a, b = min(lo, 0), max(hi, 0)
        logs = self.ratio.log_values(a, b - 1) if b > a else np.empty(0)
        csum = np.concatenate(([0.0], np.cumsum(logs)))
        out = math.log(self.mu0) + csum - csum[-a]
        return out[lo - a:hi - a + 1]

    def log_measure(self, k: int) -> float:
        """log μ_k em forma fechada, para qualquer |k|."""
        if k >= 0:
            return math.log(self.mu0) + log_sum(self.ratio, 0, k - 1)
        return math.log(self.mu0) - log_sum(self.ratio, k, -1)

    def measure(self, k: int) -> float:
        return math.exp(self.log_measure(k))

    def measures(self, lo: int, hi: int) -> np.ndarray:
        return np.exp(self.log_measures(lo, hi))

    def ratio_between(self, k: int, n: int) -> float:
        """μ_{k+n} / μ_k para qualquer n inteiro."""
        if n >= 0:
            return math.exp(log_sum(self.ratio, k, k + n - 1))
        return math.exp(-log_sum(self.ratio, k + n, k - 1))


@dataclass(frozen=True)
class Cells:
    """
    Partição de W em células B_1..B_m com tabela de oscilação finita.

    μ(f^k(B_j)) = μ_k · (β_j / μ_0) · θ_{k,j}, com θ = 1 fora da tabela e em k = 0.

    Args:
        beta: Medidas das células, Σ β_j = μ(W)
        wobble: {k: (θ_{k,1}, …, θ_{k,m})}
    """

    beta: Tuple[float, ...]
    wobble: Dict[int, Tuple[float, ...]] = field(default_factory=dict)

    def theta(self, k: int, j: int) -> float:
        row = self.wobble.get(k)
        return 1.0 if row is None else float(row[j])

    @property
    def window(self) -> Tuple[int, int]:
        """Menor intervalo [lo, hi] contendo 0 e todas as linhas da tabela."""
        ks = list(self.wobble) + [0]
        return min(ks), max(ks)


@dataclass(frozen=True)
class DissipativeSystem:
    """
    Sistema de composição dissipativo gerado por W.

    Args:
        p: Expoente de Lᵖ (≥ 1)
        measures: Sequência de medidas μ(f^k(W))
        cells: Partição opcional de W com oscilação
        K: Constante de distorção declarada (≥ 1)
        label: Nome do sistema
    """

    p: float
    measures: MeasureSequence
    cells: Optional[Cells] = None
    K: float = 1.0
    label: str = ""

    def __post_init__(self):
        if not self.p >= 1:
            raise InvalidSystemError(f"p deve ser ≥ 1, recebido {self.p}")
        if not self.K >= 1:
            raise InvalidSystemError(f"K deve ser ≥ 1, recebido {self.K}")
        if self.cells is not None:
            _validate_cells(self.cells, float(self.measures.mu0))

    @property
    def mu0(self) -> float:
        return float(self.measures.mu0)

    @property
    def n_cells(self) -> int:
        return 1 if self.cells is None else len(self.cells.beta)

    def cell_measure(self, k: int, j: int) -> float:
        """μ(f^k(B_j)); sem células, a única célula é W."""
        mu_k = self.measures.measure(k)
        if self.cells is None:
            return mu_k
        return mu_k * self.cells.beta[j] / self.mu0 * self.cells.theta(k, j)

    def cell_line(self, j: int) -> MeasureSequence:
        """Órbita da célula B_j como sequência de medidas própria."""
        if self.cells is None:
            return self.measures
        ratio = self.measures.ratio
        lo, hi = self.cells.window
        # ρ^{(j)}_k = ρ_k · θ_{k+1,j} / θ_{k,j}, diferente de ρ_k só em [lo-1, hi]
        overrides = {
            k: ratio[k] * _exact(self.cells.theta(k + 1, j)) / _exact(self.cells.theta(k, j))
            for k in range(lo - 1, hi + 1)
        }
        cell_ratio = ratio.with_core(lo - 1, hi, overrides)
        return MeasureSequence(_exact(self.cells.beta[j]), cell_ratio)

    def lines(self) -> List[MeasureSequence]:
        return [self.cell_line(j) for j in range(self.n_cells)]


def _exact(value: float) -> Number:
    """Converte floats inteiros ou racionais simples de volta para Fraction."""
    if isinstance(value, Fraction):
        return value
    frac = Fraction(value).limit_denominator(10**6)
    return frac if float(frac) == float(value) else float(value)


def _validate_cells(cells: Cells, mu0: float):
    m = len(cells.beta)
    if m < 1:
        raise InvalidSystemError("cells.beta precisa de ao menos uma célula")
    if any(not b > 0 for b in cells.beta):
        raise InvalidSystemError("todas as medidas de célula devem ser positivas")
    if not math.isclose(sum(cells.beta), mu0, rel_tol=PARTITION_TOL):
        raise InvalidSystemError(
            f"Σβ_j = {sum(cells.beta)} difere de μ(W) = {mu0}: as células não particionam W"
        )
    for k, row in cells.wobble.items():
        if len(row) != m:
            raise InvalidSystemError(f"linha {k} da tabela de oscilação tem {len(row)} entradas, esperado {m}")
        if any(not t > 0 for t in row):
            raise InvalidSystemError(f"linha {k} da tabela de oscilação tem θ não positivo")
        if k == 0 and any(t != 1 for t in row):
            raise InvalidSystemError("θ_{0,j} deve ser 1: f⁰(B_j) = B_j")
        total = sum(b * t for b, t in zip(cells.beta, row))
        if not math.isclose(total, mu0, rel_tol=PARTITION_TOL):
            raise InvalidSystemError(
                f"linha {k}: Σ_j μ(f^k(B_j)) ≠ μ_k; as células não particionam f^k(W)"
            )


@dataclass(frozen=True)
class Cycle:
    """Ciclo finito de átomos: f(a_i) = a_{i+1 mod r}."""

    measures: Tuple[Number, ...]

    def __post_init__(self):
        if not self.measures:
            raise InvalidSystemError("ciclo vazio")
        if any(not m > 0 or not math.isfinite(float(m)) for m in self.measures):
            raise InvalidSystemError("medidas de átomo devem ser positivas e finitas")


@dataclass(frozen=True)
class Line:
    """Órbita ℤ de átomos: f(site_k) = site_{k+1}."""

    measures: MeasureSequence


Component = Union[Cycle, Line]


@dataclass(frozen=True)
class AtomicSystem:
    """União disjunta finita de ciclos e linhas de átomos."""

    components: Tuple[Component, ...]
    p: float = 1.0
    label: str = ""

    def __post_init__(self):
        if not self.components:
            raise InvalidSystemError("sistema atômico sem componentes")
        if not self.p >= 1:
            raise InvalidSystemError(f"p deve ser ≥ 1, recebido {self.p}")
        object.__setattr__(self, "components", tuple(self.components))

    @property
    def cycles(self) -> List[Tuple[int, Cycle]]:
        return [(i, c) for i, c in enumerate(self.components) if isinstance(c, Cycle)]

    @property
    def lines(self) -> List[Tuple[int, Line]]:
        return [(i, c) for i, c in enumerate(self.components) if isinstance(c, Line)]


@dataclass(frozen=True)
class WeightSequence:
    """Pesos de B_w; ínfimo positivo e supremo finito garantem B_w invertível."""

    weights: EventuallyPeriodicSequence
    p: float = 1.0
    label: str = ""

    def __post_init__(self):
        low, high = self.weights.bounds()
        if not low > 0:
            raise InvalidSystemError("inf |w| = 0: B_w não é invertível")
        if not self.p >= 1:
            raise InvalidSystemError(f"p deve ser ≥ 1, recebido {self.p}")


@dataclass(frozen=True)
class StarBound:
    """Constantes de (⋆) para f⁻¹ e para f, com as cotas de norma de T_f e T_f⁻¹."""

    c: float
    c_forward: float
    norm_bound: float
    inverse_norm_bound: float
    witness: Tuple


def _line_star(ms: MeasureSequence) -> Tuple[float, float, int]:
    """sup μ_{k-1}/μ_k, sup μ_{k+1}/μ_k e o índice que realiza o primeiro."""
    seq = ms.ratio
    stored = [(float(seq[k]), k) for k in range(seq.core_lo - len(seq.neg_period), seq.core_hi + len(seq.pos_period) + 1)]
    low_value, low_k = min(stored)
    high_value = max(v for v, _ in stored)
    # μ_{k-1}/μ_k = 1/ρ_{k-1}: o supremo vem do menor ρ
    return 1.0 / low_value, high_value, low_k + 1


def check_star(system: Union[DissipativeSystem, AtomicSystem]) -> Tuple[bool, Optional[StarBound]]:
    """
    Verifica a condição (⋆): μ(f⁻¹(B)) ≤ c μ(B).

    O supremo sobre conjuntos é atingido em sítios, pois a razão de somas
    nunca excede a maior razão das parcelas.

    Args:
        system: Sistema dissipativo ou atômico

    Returns:
        (True, StarBound) se c é finito, (False, None) caso contrário
    """
    best_c, best_fwd, witness = 0.0, 0.0, None
    if isinstance(system, DissipativeSystem):
        for j, line in enumerate(system.lines()):
            c, c_fwd, k = _line_star(line)
            if c > best_c:
                best_c, witness = c, ("cell", j, k)
            best_fwd = max(best_fwd, c_fwd)
    else:
        for i, comp in enumerate(system.components):
            if isinstance(comp, Line):
                c, c_fwd, k = _line_star(comp.measures)
                if c > best_c:
                    best_c, witness = c, ("line", i, k)
                best_fwd = max(best_fwd, c_fwd)
            else:
                r = len(comp.measures)
                for a in range(r):
                    back = float(comp.measures[(a - 1) % r]) / float(comp.measures[a])
                    fwd = float(comp.measures[(a + 1) % r]) / float(comp.measures[a])
                    if back > best_c:
                        best_c, witness = back, ("cycle", i, a)
                    best_fwd = max(best_fwd, fwd)

    if not math.isfinite(best_c) or not math.isfinite(best_fwd):
        logger.warning("condição (⋆) falhou: supremo infinito")
        return False, None
    p = system.p
    return True, StarBound(best_c, best_fwd, best_c ** (1 / p), best_fwd ** (1 / p), witness)


@dataclass(frozen=True)
class DistortionResult:
    """Resultado de (◊): K mínimo, comparação com o K declarado e testemunha (k, j)."""

    ok: bool
    K_min: float
    witness: Optional[Tuple[int, int]]


def check_bounded_distortion(system: DissipativeSystem) -> DistortionResult:
    """
    Menor K satisfazendo as duas desigualdades de (◊).

    Para B união de células, μ(f^k(B))μ(W) / (μ_k μ(B)) é média ponderada dos
    θ_{k,j}; os extremos são atingidos em células isoladas.

    Args:
        system: Sistema dissipativo

    Returns:
        DistortionResult com ok = (K_min ≤ K declarado)
    """
    if system.cells is None:
        return DistortionResult(True, 1.0, None)
    k_min, witness = 1.0, None
    for k in sorted(system.cells.wobble):
        for j, theta in enumerate(system.cells.wobble[k]):
            need = max(theta, 1.0 / theta)
            if need > k_min:
                k_min, witness = need, (k, j)
    ok = k_min <= system.K * (1 + PARTITION_TOL)
    if not ok:
        logger.info("distorção declarada K=%s menor que K_min=%s em %s", system.K, k_min, witness)
    return DistortionResult(ok, k_min, witness)


def derived_distortion_H(system: DissipativeSystem) -> float:
    """
    Menor H satisfazendo (◊◊) na janela de oscilação.

    A razão μ(f^{t+s}(B))/μ(f^s(B)) dividida por μ_{t+s}/μ_s vale θ_{t+s,j}/θ_{s,j}
    numa célula; para uniões vale a razão de duas médias ponderadas, limitada
    pela maior razão entre células. Fora da janela θ = 1.

    Args:
        system: Sistema dissipativo com (◊) válido

    Returns:
        H ≥ 1
    """
    if system.cells is None:
        return 1.0
    window = sorted(set(system.cells.wobble) | {0})
    h = 1.0
    for j in range(system.n_cells):
        thetas = [system.cells.theta(k, j) for k in window]
        h = max(h, max(thetas) / min(thetas))
    k_min = check_bounded_distortion(system).K_min
    assert h <= k_min ** 2 * (1 + 1e-12), "(◊◊) excede K², inconsistente com (◊)"
    return h


def _root(value: Number, p: float) -> Number:
    if p == 1:
        return 1 / value if isinstance(value, Fraction) else 1.0 / float(value)
    return float(value) ** (-1.0 / p)


def induced_weights(system: DissipativeSystem) -> WeightSequence:
    """
    Pesos w_k = (μ_{k-1}/μ_k)^{1/p} = ρ_{k-1}^{-1/p} do shift associado.

    Args:
        system: Sistema dissipativo

    Returns:
        WeightSequence com a mesma estrutura de apresentação das razões
    """
    p = system.p
    weights = system.measures.ratio.map(lambda v: _root(v, p)).shifted(1)
    return WeightSequence(weights, p=p, label=f"{system.label}:w" if system.label else "")


def shift_to_measures(w: WeightSequence, mu0: Number = 1) -> DissipativeSystem:
    """
    Sistema dissipativo (sem células, K = 1) cujo T_f é isométrico a B_w.

    ρ_k = μ_{k+1}/μ_k = w_{k+1}^{-p}.
    """
    p = w.p
    if p == 1:
        ratio = w.weights.reciprocal().shifted(-1)
    else:
        ratio = w.weights.map(lambda v: float(v) ** (-p)).shifted(-1)
    return DissipativeSystem(p=p, measures=MeasureSequence(mu0, ratio), label=w.label)


def side_rates(ms: MeasureSequence) -> Tuple[float, float]:
    """
    (g⁻, g⁺): médias geométricas dos períodos negativo e positivo das razões.

    Args:
        ms: Sequência de medidas

    Returns:
        Tupla (g⁻, g⁺)
    """
    return geometric_mean(ms.ratio.neg_period), geometric_mean(ms.ratio.pos_period)


def fingerprint(system: Union[DissipativeSystem, AtomicSystem, WeightSequence]) -> str:
    """Impressão digital estável (sha256 curto) da apresentação finita."""
    digest = hashlib.sha256(_canonical_repr(system).encode("utf-8")).hexdigest()
    return digest[:16]


def _canonical_repr(obj) -> str:
    if isinstance(obj, EventuallyPeriodicSequence):
        parts = [str(obj.core_lo)] + [",".join(_num(v) for v in vals) for vals in (obj.core, obj.neg_period, obj.pos_period)]
        return "seq(" + ";".join(parts) + ")"
    if isinstance(obj, MeasureSequence):
        return f"ms({_num(obj.mu0)};{_canonical_repr(obj.ratio)})"
    if isinstance(obj, Cells):
        rows = ";".join(f"{k}:" + ",".join(_num(t) for t in obj.wobble[k]) for k in sorted(obj.wobble))
        return "cells(" + ",".join(_num(b) for b in obj.beta) + "|" + rows + ")"
    if isinstance(obj, DissipativeSystem):
        cells = _canonical_repr(obj.cells) if obj.cells else "-"
        return f"dissipative({_num(obj.p)};{_canonical_repr(obj.measures)};{cells};{_num(obj.K)})"
    if isinstance(obj, Cycle):
        return "cycle(" + ",".join(_num(m) for m in obj.measures) + ")"
    if isinstance(obj, Line):
        return "line(" + _canonical_repr(obj.measures) + ")"
    if isinstance(obj, AtomicSystem):
        return f"atomic({_num(obj.p)};" + ";".join(_canonical_repr(c) for c in obj.components) + ")"
    if isinstance(obj, WeightSequence):
        return f"shift({_num(obj.p)};{_canonical_repr(obj.weights)})"
    raise TypeError(f"tipo sem representação canônica: {type(obj).__name__}")


def _num(value: Number) -> str:
    if isinstance(value, Fraction):
        return str(value)
    return repr(float(value))
