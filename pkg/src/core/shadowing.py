#!/usr/bin/env python3
"""
Módulo de sombreamento - pseudotrajetórias, decomposições hiperbólicas certificadas e órbitas sombreadoras
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .classify import classify_shift
from .sequences import NEG, POS, EventuallyPeriodicSequence, side_rate
from .simulate import (
    MAX_RANDOM_SUPPORT,
    ShiftOperator,
    ShiftVector,
)

logger = logging.getLogger(__name__)

# Raio dos sítios onde as perturbações aleatórias são colocadas
PERTURBATION_RADIUS = 10

# Tolerância da relação de órbita T z_n = z_{n+1}
ORBIT_TOL = 1e-9

ALL_STABLE = "stable"
ALL_UNSTABLE = "unstable"
CUT = "cut"

# Corte de coordenadas: M = {k ≤ SPLIT_CUT}, N = {k > SPLIT_CUT}
SPLIT_CUT = 0


class NoSplittingError(RuntimeError):
    """Operador sem decomposição hiperbólica verificada: sombreamento recusado."""


@dataclass(frozen=True)
class Pseudotrajectory:
    """
    δ-pseudotrajetória x_{-N}, …, x_N.

    errors guarda e_n = T x_n - x_{n+1} como gerados, evitando cancelamento
    numérico quando ‖x_n‖ cresce.
    """

    points: Tuple[ShiftVector, ...]
    delta: float
    errors: Tuple[ShiftVector, ...]

    @property
    def half_length(self) -> int:
        return (len(self.points) - 1) // 2

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class Certificate:
    """‖T^{±n} restrito ao bloco‖ ≤ C λⁿ, verificado por varredura de janelas até comprimento window."""

    lam: float
    C: float
    window: int


@dataclass(frozen=True)
class Splitting:
    """
    Decomposição X = M ⊕ N por coordenadas.

    kind = ALL_STABLE (M = X), ALL_UNSTABLE (N = X) ou CUT
    (M = {k ≤ cut}, N = {k > cut}).
    """

    kind: str
    stable: Optional[Certificate]
    unstable: Optional[Certificate]
    cut: int = SPLIT_CUT
    verified: bool = True

    def is_stable(self, k: int) -> bool:
        if self.kind == ALL_STABLE:
            return True
        if self.kind == ALL_UNSTABLE:
            return False
        return k <= self.cut

    def project(self, x: ShiftVector) -> Tuple[ShiftVector, ShiftVector]:
        """(P_s x, P_u x)."""
        stable = {k: c for k, c in x.coefficients.items() if self.is_stable(k)}
        unstable = {k: c for k, c in x.coefficients.items() if not self.is_stable(k)}
        return ShiftVector(stable, x.p), ShiftVector(unstable, x.p)

    def apriori_bound(self, delta: float) -> float:
        """δ·(C_s/(1-λ_s) + C_u·λ_u/(1-λ_u)), com as parcelas ausentes valendo zero."""
        total = 0.0
        if self.stable is not None:
            total += self.stable.C / (1 - self.stable.lam)
        if self.unstable is not None:
            total += self.unstable.C * self.unstable.lam / (1 - self.unstable.lam)
        return delta * total


def _walk_sup(logs_by_start: List[np.ndarray], log_lam: float) -> float:
    """sup sobre inícios e comprimentos n ≥ 1 de exp(Σ - n log λ), com piso 1."""
    best = 0.0
    for logs in logs_by_start:
        steps = np.cumsum(logs - log_lam)
        if steps.size:
            best = max(best, float(steps.max()))
    return math.exp(best)


def _stable_certificate(seq: EventuallyPeriodicSequence, lam: float, starts: range, window: int) -> Certificate:
    """Iterados B^n e_k = (∏_{j=k-n+1}^{k} w_j) e_{k-n}: caminha para a esquerda."""
    logs = [seq.log_values(k - window + 1, k)[::-1] for k in starts]
    return Certificate(lam, _walk_sup(logs, math.log(lam)), window)


def _unstable_certificate(seq: EventuallyPeriodicSequence, lam: float, starts: range, window: int) -> Certificate:
    """Iterados B^{-n} e_k = e_{k+n} / ∏_{j=k+1}^{k+n} w_j: caminha para a direita."""
    logs = [-seq.log_values(k + 1, k + window) for k in starts]
    return Certificate(lam, _walk_sup(logs, math.log(lam)), window)


def _certificates(seq: EventuallyPeriodicSequence, kind: str, cut: int, window: int):
    rates = side_rate(seq)
    lo = seq.core_lo - 2 * max(len(seq.neg_period), len(seq.pos_period)) - 2
    hi = seq.core_hi + 2 * max(len(seq.neg_period), len(seq.pos_period)) + 2
    lo, hi = min(lo, cut - 1), max(hi, cut + 2)
    stable = unstable = None
    if kind == ALL_STABLE:
        stable = _stable_certificate(seq, max(rates.gm_neg, rates.gm_pos), range(lo, hi + 1), window)
    elif kind == ALL_UNSTABLE:
        lam = 1 / min(rates.gm_neg, rates.gm_pos)
        unstable = _unstable_certificate(seq, lam, range(lo, hi + 1), window)
    else:
        stable = _stable_certificate(seq, rates.gm_neg, range(lo, cut + 1), window)
        unstable = _unstable_certificate(seq, 1 / rates.gm_pos, range(cut + 1, hi + 1), window)
    return stable, unstable


def build_splitting(operator: ShiftOperator, window: Optional[int] = None) -> Splitting:
    """
    Decomposição certificada de B_w a partir das condições a), b), c).

    a) max GM < 1: tudo estável; b) min GM > 1: tudo instável;
    c) GM⁻ < 1 < GM⁺: corte M = {k ≤ 0}, N = {k ≥ 1}.

    Args:
        operator: Shift ponderado
        window: Comprimento máximo das janelas varridas (padrão cobre núcleo e quatro períodos)

    Returns:
        Splitting verificado

    Raises:
        NoSplittingError: se o sombreamento não vale ou a verificação falha
    """
    seq = operator.w.weights
    sss, shadowing, _ = classify_shift(operator.w)
    if not shadowing.holds:
        raise NoSplittingError(f"sem decomposição: sombreamento {shadowing.status} ({shadowing.citation})")
    kind = {"B-a": ALL_STABLE, "B-b": ALL_UNSTABLE, "B-c": CUT}[sss.citation]

    span = len(seq.core) + 4 * (len(seq.neg_period) + len(seq.pos_period)) + 8
    window = window or span + abs(seq.core_lo) + abs(seq.core_hi)
    stable, unstable = _certificates(seq, kind, SPLIT_CUT, window)
    # revarredura com janelas duas vezes mais longas
    check_s, check_u = _certificates(seq, kind, SPLIT_CUT, 2 * window)
    verified = all(
        a is None or b.C <= a.C * (1 + 1e-9)
        for a, b in ((stable, check_s), (unstable, check_u))
    )
    for cert in (stable, unstable):
        if cert is not None and not (0 < cert.lam < 1):
            verified = False
    if not verified:
        raise NoSplittingError("certificado de contração não verificou")
    logger.debug("decomposição %s: estável=%s instável=%s", kind, stable, unstable)
    return Splitting(kind, stable, unstable, SPLIT_CUT, verified)


def make_pseudotrajectory(
    operator: ShiftOperator,
    x0: Optional[ShiftVector],
    delta: float,
    length: int,
    seed: int = 0,
    block: Optional[str] = None,
    zero_errors: bool = False,
) -> Pseudotrajectory:
    """
    Gera x_{n+1} = T x_n + η_n com ‖η_n‖ ≤ δ.

    Cada η_n tem suporte aleatório (até MAX_RANDOM_SUPPORT sítios com
    |k| ≤ PERTURBATION_RADIUS), direção gaussiana normalizada e magnitude
    uniforme em [0, δ].

    Args:
        operator: Shift ponderado
        x0: Ponto inicial x_{-N} (None = 0)
        delta: δ > 0
        length: Quantidade de pontos 2N + 1 (ímpar, ≥ 1)
        seed: Semente
        block: NEG restringe as perturbações a k ≤ 0, POS a k ≥ 1
        zero_errors: Sem perturbações (órbita verdadeira)

    Returns:
        Pseudotrajectory verificada
    """
    if not delta > 0:
        raise ValueError("delta deve ser positivo")
    if length < 1 or length % 2 == 0:
        raise ValueError("length deve ser ímpar e positivo")
    rng = np.random.default_rng(seed)
    if block == NEG:
        pool = np.arange(-PERTURBATION_RADIUS, 1)
    elif block == POS:
        pool = np.arange(1, PERTURBATION_RADIUS + 1)
    else:
        pool = np.arange(-PERTURBATION_RADIUS, PERTURBATION_RADIUS + 1)

    x = x0 if x0 is not None else ShiftVector.zero(operator.p)
    points, errors = [x], []
    for _ in range(length - 1):
        if zero_errors:
            eta = ShiftVector.zero(operator.p)
        else:
            size = int(rng.integers(1, MAX_RANDOM_SUPPORT + 1))
            sites = rng.choice(pool, size=min(size, pool.size), replace=False)
            direction = ShiftVector({int(k): float(c) for k, c in zip(sites, rng.standard_normal(len(sites)))}, operator.p)
            eta = (delta * float(rng.uniform()) / direction.norm()) * direction
        x = operator.apply(x, 1) + eta
        points.append(x)
        errors.append(-eta)

    worst = max((e.norm() for e in errors), default=0.0)
    assert worst <= delta * (1 + 1e-12), "perturbação excede δ"
    return Pseudotrajectory(tuple(points), delta, tuple(errors))


@dataclass(frozen=True)
class ShadowResult:
    """Órbita sombreadora z = z_{-N}, ε atingido, cota a priori e resíduo da relação de órbita."""

    z: ShiftVector
    epsilon: float
    bound: float
    residual: float
    pruned_mass: float

    @property
    def orbit_ok(self) -> bool:
        """T z_n = z_{n+1} verificada dentro de ORBIT_TOL."""
        return self.residual <= ORBIT_TOL

    @property
    def within_bound(self) -> bool:
        return self.orbit_ok and self.epsilon <= self.bound * (1 + 1e-12) + 1e-12


def shadow(operator: ShiftOperator, pt: Pseudotrajectory, split: Optional[Splitting]) -> ShadowResult:
    """
    Constrói a órbita verdadeira z_n = x_n + d_n com d_{n+1} = T d_n + e_n.

    S_{-N} = 0, S_{n+1} = T S_n + P_s e_n (parte estável, iterados positivos);
    U_N = 0, U_n = T^{-1}(P_u e_n + U_{n+1}) (parte instável, iterados negativos);
    d_n = S_n - U_n. Coeficientes abaixo de TRUNCATION_EPS relativos são
    podados e a massa removida entra em ε.

    Args:
        operator: Shift ponderado
        pt: Pseudotrajetória
        split: Decomposição verificada

    Returns:
        ShadowResult

    Raises:
        NoSplittingError: sem decomposição verificada
    """
    if split is None or not split.verified:
        raise NoSplittingError("sombreamento recusado: decomposição ausente ou não verificada")
    errors = list(pt.errors)
    count = len(pt.points)
    p = operator.p

    stable_parts, unstable_parts = zip(*(split.project(e) for e in errors)) if errors else ((), ())
    pruned_mass = 0.0

    S = [ShiftVector.zero(p)]
    for n in range(count - 1):
        nxt, lost = (operator.apply(S[-1], 1) + stable_parts[n]).pruned()
        pruned_mass += lost
        S.append(nxt)

    U = [ShiftVector.zero(p)] * count
    for n in range(count - 2, -1, -1):
        prev, lost = operator.apply(unstable_parts[n] + U[n + 1], -1).pruned()
        pruned_mass += lost
        U[n] = prev

    d = [s - u for s, u in zip(S, U)]
    epsilon = max(v.norm() for v in d) + pruned_mass

    # T z_n - z_{n+1} com z_n = x_n + d_n, medido contra os pontos dados
    residual = 0.0
    for n in range(count - 1):
        gap = operator.apply(pt.points[n] + d[n], 1) - (pt.points[n + 1] + d[n + 1])
        scale = max(1.0, pt.points[n + 1].norm())
        residual = max(residual, gap.norm() / scale)
    if residual > ORBIT_TOL:
        logger.warning("relação de órbita com resíduo %.3g acima de %.1g", residual, ORBIT_TOL)

    z = pt.points[0] + d[0]
    bound = split.apriori_bound(pt.delta)
    logger.info("sombreamento: ε=%.6g cota=%.6g resíduo=%.3g", epsilon, bound, residual)
    return ShadowResult(z, epsilon, bound, residual, pruned_mass)
