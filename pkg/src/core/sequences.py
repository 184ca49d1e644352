#!/usr/bin/env python3
"""
Módulo de sequências eventualmente periódicas - avaliação, produtos em janela e taxas limite
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Dict, Iterable, Optional, Sequence, Tuple, Union

import numpy as np

logger = logging.getLogger(__name__)

Number = Union[Fraction, float, int]

# Tolerância relativa para comparações de taxa contra 1 quando há valores não racionais
REL_TOL = 1e-9

FORWARD = "forward"
BACKWARD = "backward"
DIRECTIONS = (FORWARD, BACKWARD)

SUP_ALL_K = "sup_all_k"
INF_ALL_K = "inf_all_k"
SUP_K_IN_NEGATIVES = "sup_k_in_negatives"
INF_K_IN_NEGATIVES = "inf_k_in_negatives"
SUP_K_IN_NATURALS = "sup_k_in_naturals"
INF_K_IN_NATURALS = "inf_k_in_naturals"
QUANTIFIERS = (
    SUP_ALL_K,
    INF_ALL_K,
    SUP_K_IN_NEGATIVES,
    INF_K_IN_NEGATIVES,
    SUP_K_IN_NATURALS,
    INF_K_IN_NATURALS,
)

NEG = "neg"
POS = "pos"


def _as_number(value: Number) -> Number:
    """Mantém racionais exatos; todo o resto vira float."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    return float(value)


def _log(value: Number) -> float:
    if isinstance(value, Fraction):
        # log(a/b) sem passar por float(a/b), que pode estourar para inteiros grandes
        return math.log(value.numerator) - math.log(value.denominator)
    return math.log(value)


@dataclass(frozen=True)
class EventuallyPeriodicSequence:
    """
    Sequência bilateral positiva com tabela explícita e caudas periódicas.

    Para k < core_lo a cauda negativa é lida da direita para a esquerda:
    v_{core_lo-1} é o último elemento de neg_period, v_{core_lo-2} o penúltimo, etc.
    Para k > core_hi a cauda positiva é lida da esquerda para a direita.
    """

    core_lo: int
    core: Tuple[Number, ...]
    neg_period: Tuple[Number, ...]
    pos_period: Tuple[Number, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        for attr in ("core", "neg_period", "pos_period"):
            values = tuple(_as_number(v) for v in getattr(self, attr))
            if not values:
                raise ValueError(f"{attr} não pode ser vazio")
            for v in values:
                if not (v > 0) or not math.isfinite(float(v)):
                    raise ValueError(f"{attr} contém valor não positivo ou infinito: {v}")
            object.__setattr__(self, attr, values)
        object.__setattr__(self, "core_lo", int(self.core_lo))
        low, high = self.bounds()
        assert 0 < low <= high < math.inf

    # ------------------------------------------------------------------ construção

    @classmethod
    def constant(cls, value: Number) -> "EventuallyPeriodicSequence":
        """Sequência constante v ≡ value."""
        return cls(0, (value,), (value,), (value,))

    @classmethod
    def step(cls, left: Number, right: Number, split: int = 0) -> "EventuallyPeriodicSequence":
        """
        Sequência em degrau: v_k = left para k ≤ split, v_k = right para k > split.

        Args:
            left: Valor na metade esquerda (inclui split)
            right: Valor na metade direita
            split: Último índice com valor left

        Returns:
            Nova sequência
        """
        return cls(split, (left,), (left,), (right,))

    @property
    def core_hi(self) -> int:
        return self.core_lo + len(self.core) - 1

    def bounds(self) -> Tuple[float, float]:
        """Ínfimo e supremo globais (atingidos em algum valor armazenado)."""
        values = [float(v) for v in self.core + self.neg_period + self.pos_period]
        return min(values), max(values)

    def map(self, func: Callable[[Number], Number], name: str = "") -> "EventuallyPeriodicSequence":
        """Aplica func a cada valor armazenado, preservando a apresentação."""
        return EventuallyPeriodicSequence(
            self.core_lo,
            tuple(func(v) for v in self.core),
            tuple(func(v) for v in self.neg_period),
            tuple(func(v) for v in self.pos_period),
            name=name or self.name,
        )

    def reciprocal(self) -> "EventuallyPeriodicSequence":
        return self.map(lambda v: 1 / v)

    def shifted(self, offset: int) -> "EventuallyPeriodicSequence":
        """Sequência u_k = v_{k - offset}."""
        return EventuallyPeriodicSequence(
            self.core_lo + offset, self.core, self.neg_period, self.pos_period, name=self.name
        )

    def period(self, side: str) -> Tuple[Number, ...]:
        return self.neg_period if side == NEG else self.pos_period

    def with_core(self, lo: int, hi: int, overrides: Optional[Dict[int, Number]] = None) -> "EventuallyPeriodicSequence":
        """
        Reapresenta a mesma sequência com núcleo [lo, hi] ⊇ [core_lo, core_hi].

        Os períodos são rotacionados para manter a fase das caudas; overrides
        substitui valores dentro do novo núcleo.

        Args:
            lo: Novo core_lo (≤ core_lo)
            hi: Novo core_hi (≥ core_hi)
            overrides: Valores {k: v} a substituir no núcleo

        Returns:
            Nova sequência
        """
        lo, hi = min(lo, self.core_lo), max(hi, self.core_hi)
        overrides = overrides or {}
        for k in overrides:
            if not lo <= k <= hi:
                raise ValueError(f"índice {k} fora do núcleo [{lo}, {hi}]")
        n_neg, n_pos = len(self.neg_period), len(self.pos_period)
        return EventuallyPeriodicSequence(
            lo,
            tuple(overrides.get(k, eval_at(self, k)) for k in range(lo, hi + 1)),
            tuple(eval_at(self, lo - n_neg + i) for i in range(n_neg)),
            tuple(eval_at(self, hi + 1 + i) for i in range(n_pos)),
            name=self.name,
        )

    # ------------------------------------------------------------------ avaliação

    def __getitem__(self, k: int) -> Number:
        return eval_at(self, k)

    @cached_property
    def _core_logs(self) -> np.ndarray:
        return np.array([_log(v) for v in self.core])

    @cached_property
    def _neg_logs(self) -> np.ndarray:
        return np.array([_log(v) for v in self.neg_period])

    @cached_property
    def _pos_logs(self) -> np.ndarray:
        return np.array([_log(v) for v in self.pos_period])

    def log_values(self, lo: int, hi: int) -> np.ndarray:
        """
        Logaritmos de v_k para k em [lo, hi], vetorizados.

        Args:
            lo: Primeiro índice
            hi: Último índice (inclusivo)

        Returns:
            Array numpy de tamanho hi - lo + 1
        """
        ks = np.arange(lo, hi + 1)
        out = np.empty(ks.shape, dtype=float)

        in_core = (ks >= self.core_lo) & (ks <= self.core_hi)
        out[in_core] = self._core_logs[ks[in_core] - self.core_lo]

        left = ks < self.core_lo
        dist = self.core_lo - ks[left]
        n_neg = len(self.neg_period)
        out[left] = self._neg_logs[n_neg - 1 - (dist - 1) % n_neg]

        right = ks > self.core_hi
        dist = ks[right] - self.core_hi
        out[right] = self._pos_logs[(dist - 1) % len(self.pos_period)]
        return out


@dataclass(frozen=True)
class SideRate:
    """Médias geométricas das duas caudas periódicas."""

    gm_neg: float
    gm_pos: float


def eval_at(seq: EventuallyPeriodicSequence, k: int) -> Number:
    """
    Retorna v_k conforme a apresentação finita.

    Args:
        seq: Sequência eventualmente periódica
        k: Índice inteiro

    Returns:
        Valor positivo v_k
    """
    if k < seq.core_lo:
        dist = seq.core_lo - k
        n_neg = len(seq.neg_period)
        return seq.neg_period[n_neg - 1 - (dist - 1) % n_neg]
    if k > seq.core_hi:
        return seq.pos_period[(k - seq.core_hi - 1) % len(seq.pos_period)]
    return seq.core[k - seq.core_lo]


def window_log_sum(seq: EventuallyPeriodicSequence, k: int, n: int) -> float:
    """Σ_{j=k}^{k+n} log v_j."""
    if n < 0:
        raise ValueError("n deve ser ≥ 0")
    return float(np.sum(seq.log_values(k, k + n)))


def window_product(seq: EventuallyPeriodicSequence, k: int, n: int) -> float:
    """
    Produto dos n+1 valores v_k … v_{k+n}, calculado em espaço logarítmico.

    Args:
        seq: Sequência
        k: Índice inicial
        n: Extensão da janela (n ≥ 0)

    Returns:
        ∏_{j=k}^{k+n} v_j
    """
    return math.exp(window_log_sum(seq, k, n))


def geometric_mean(values: Sequence[Number]) -> float:
    return math.exp(sum(_log(v) for v in values) / len(values))


def side_rate(seq: EventuallyPeriodicSequence) -> SideRate:
    """Médias geométricas de neg_period e pos_period."""
    return SideRate(geometric_mean(seq.neg_period), geometric_mean(seq.pos_period))


def compare_product_to_one(values: Iterable[Number]) -> int:
    """
    Sinal de log(∏ values): -1 se o produto < 1, 0 se = 1, +1 se > 1.

    Exato quando todos os valores são racionais; caso contrário usa REL_TOL
    relativo à soma dos |log|.
    """
    values = list(values)
    if all(isinstance(v, Fraction) for v in values):
        prod = Fraction(1)
        for v in values:
            prod *= v
        return (prod > 1) - (prod < 1)
    logs = [_log(v) for v in values]
    total = sum(logs)
    scale = max(1.0, sum(abs(x) for x in logs))
    if abs(total) <= REL_TOL * scale:
        return 0
    return 1 if total > 0 else -1


def tail_sign(seq: EventuallyPeriodicSequence, side: str) -> int:
    """Sinal de log(gm) da cauda indicada (NEG ou POS)."""
    return compare_product_to_one(seq.period(side))


def _tails_for(quantifier: str, direction: str) -> Tuple[Tuple[str, ...], Callable]:
    """
    Caudas que determinam o limite e o agregador (max para sup, min para inf).

    Janelas longas têm taxa logarítmica igual a uma combinação convexa das
    taxas das caudas que atravessam; o núcleo finito contribui O(1/n).
    """
    if quantifier not in QUANTIFIERS:
        raise ValueError(f"quantificador desconhecido: {quantifier}")
    if direction not in DIRECTIONS:
        raise ValueError(f"direção desconhecida: {direction}")
    agg = max if quantifier.startswith("sup") else min
    if quantifier.endswith("negatives") and direction == BACKWARD:
        return (NEG,), agg
    if quantifier.endswith("naturals") and direction == FORWARD:
        return (POS,), agg
    return (NEG, POS), agg


def rate_exact(seq: EventuallyPeriodicSequence, quantifier: str, direction: str = FORWARD) -> float:
    """
    Limite exato de (Q_n)^{1/n}, com Q_n o produto em janela quantificado.

    Args:
        seq: Sequência eventualmente periódica
        quantifier: Um de QUANTIFIERS
        direction: FORWARD (∏_{j=k}^{k+n}) ou BACKWARD (∏_{j=k-n}^{k})

    Returns:
        Taxa limite positiva
    """
    tails, agg = _tails_for(quantifier, direction)
    rates = side_rate(seq)
    values = {NEG: rates.gm_neg, POS: rates.gm_pos}
    return agg(values[t] for t in tails)


def rate_sign(seq: EventuallyPeriodicSequence, quantifier: str, direction: str = FORWARD) -> int:
    """Sinal exato de log(rate_exact): -1 (< 1), 0 (= 1), +1 (> 1)."""
    tails, agg = _tails_for(quantifier, direction)
    return agg(tail_sign(seq, t) for t in tails)


def rate_horizon(
    seq: EventuallyPeriodicSequence,
    quantifier: str,
    direction: str,
    n: int,
    k_span: int,
) -> float:
    """
    Estimador de horizonte finito da taxa: quantifica sobre |k| ≤ k_span.

    O expoente é 1/(número de fatores), de modo que sequências constantes
    são reproduzidas exatamente em qualquer horizonte.

    Args:
        seq: Sequência
        quantifier: Um de QUANTIFIERS
        direction: FORWARD ou BACKWARD
        n: Extensão da janela (n ≥ 1)
        k_span: Raio de varredura dos índices k (≥ 1)

    Returns:
        Estimativa positiva da taxa
    """
    if n < 1 or k_span < 1:
        raise ValueError("n e k_span devem ser ≥ 1")
    _tails_for(quantifier, direction)

    if quantifier.endswith("negatives"):
        k_lo, k_hi = -k_span, 0
    elif quantifier.endswith("naturals"):
        k_lo, k_hi = 0, k_span
    else:
        k_lo, k_hi = -k_span, k_span

    # janelas [k, k+n] (forward) ou [k-n, k] (backward) como diferenças de somas acumuladas
    lo, hi = k_lo - n, k_hi + n
    csum = np.concatenate(([0.0], np.cumsum(seq.log_values(lo, hi))))
    ks = np.arange(k_lo, k_hi + 1)
    starts = ks - lo if direction == FORWARD else ks - n - lo
    sums = csum[starts + n + 1] - csum[starts]

    best = sums.max() if quantifier.startswith("sup") else sums.min()
    return math.exp(best / (n + 1))


def sup_partial_product(seq: EventuallyPeriodicSequence, start: int, direction: str) -> float:
    """
    sup_{n ≥ 1} do produto dos n primeiros valores lidos a partir de start.

    FORWARD lê v_start, v_{start+1}, …; BACKWARD lê v_start, v_{start-1}, ….
    Retorna math.inf quando a cauda alcançada tem média geométrica > 1.
    Caso contrário o supremo é atingido antes de completar um período da
    cauda, pois cada período multiplica o produto por gm^L ≤ 1.

    Args:
        seq: Sequência
        start: Primeiro índice lido
        direction: FORWARD ou BACKWARD

    Returns:
        Supremo (possivelmente infinito)
    """
    walk = _Walk.read(seq, start, direction)
    if walk.sign > 0:
        return math.inf
    return math.exp(float(np.max(walk.partial)))


@dataclass(frozen=True)
class _Walk:
    """
    Somas parciais de log lidas a partir de start até completar um período
    da cauda alcançada. Daí em diante cada período soma exatamente period_sum.
    """

    partial: np.ndarray
    pre: int
    period: int
    period_sum: float
    sign: int

    @classmethod
    def read(cls, seq: EventuallyPeriodicSequence, start: int, direction: str) -> "_Walk":
        if direction not in DIRECTIONS:
            raise ValueError(f"direção desconhecida: {direction}")
        side = POS if direction == FORWARD else NEG
        period = len(seq.period(side))
        if direction == FORWARD:
            pre = max(0, seq.core_hi - start + 1)
            logs = seq.log_values(start, start + pre + period - 1)
        else:
            pre = max(0, start - seq.core_lo + 1)
            logs = seq.log_values(start - pre - period + 1, start)[::-1]
        return cls(np.cumsum(logs), pre, period, float(np.sum(logs[pre:])), tail_sign(seq, side))

    def _phase_counts(self, target: float) -> np.ndarray:
        """Para cada fase da cauda, menor m com partial + m·period_sum > target."""
        phase = self.partial[self.pre:]
        return np.maximum(0, np.floor((target - phase) / self.period_sum) + 1)


def first_crossing(seq: EventuallyPeriodicSequence, start: int, direction: str, target: float) -> Optional[int]:
    """
    Menor n ≥ 1 em que a soma dos n primeiros log v lidos a partir de start
    passa de target, em forma fechada (sem percorrer a cauda).

    Args:
        seq: Sequência
        start: Primeiro índice lido
        direction: FORWARD ou BACKWARD
        target: Limiar em espaço logarítmico

    Returns:
        n, ou None quando a soma nunca passa de target
    """
    walk = _Walk.read(seq, start, direction)
    hits = np.nonzero(walk.partial > target)[0]
    if hits.size:
        return int(hits[0]) + 1
    if walk.sign <= 0:
        return None
    counts = walk._phase_counts(target)
    ns = walk.pre + 1 + np.arange(walk.period) + counts * walk.period
    return int(ns.min())


def stable_crossing(seq: EventuallyPeriodicSequence, start: int, direction: str, target: float) -> Optional[int]:
    """
    Menor N tal que toda soma parcial com n ≥ N passa de target.

    Só existe quando a cauda alcançada tem média geométrica > 1.
    """
    walk = _Walk.read(seq, start, direction)
    if walk.sign <= 0:
        return None
    counts = walk._phase_counts(target)
    # último n ainda abaixo de target, fase a fase
    below = walk.pre + 1 + np.arange(walk.period) + (counts - 1) * walk.period
    below = np.where(counts > 0, below, 0)
    head = np.nonzero(walk.partial[:walk.pre] <= target)[0]
    last = max(int(below.max()), int(head[-1]) + 1 if head.size else 0)
    return last + 1


def log_sum(seq: EventuallyPeriodicSequence, lo: int, hi: int) -> float:
    """
    Σ_{j=lo}^{hi} log v_j em tempo proporcional ao núcleo e aos períodos.

    Args:
        seq: Sequência
        lo: Primeiro índice
        hi: Último índice (inclusivo); hi < lo dá 0

    Returns:
        Soma dos logaritmos
    """
    if hi < lo:
        return 0.0
    total = 0.0
    a, b = max(lo, seq.core_lo), min(hi, seq.core_hi)
    if a <= b:
        total += float(np.sum(seq._core_logs[a - seq.core_lo:b - seq.core_lo + 1]))
    if lo < seq.core_lo:
        # distâncias d = core_lo - j, lidas da direita para a esquerda
        reading = seq._neg_logs[::-1]
        far, near = seq.core_lo - lo, seq.core_lo - min(hi, seq.core_lo - 1)
        total += _periodic_prefix(reading, far) - _periodic_prefix(reading, near - 1)
    if hi > seq.core_hi:
        near, far = max(lo, seq.core_hi + 1) - seq.core_hi, hi - seq.core_hi
        total += _periodic_prefix(seq._pos_logs, far) - _periodic_prefix(seq._pos_logs, near - 1)
    return total


def _periodic_prefix(logs: np.ndarray, d: int) -> float:
    """Soma dos d primeiros termos da repetição periódica de logs."""
    full, rest = divmod(d, len(logs))
    return full * float(np.sum(logs)) + float(np.sum(logs[:rest]))


def horizon_bias(seq: EventuallyPeriodicSequence, n: int) -> float:
    """
    Cota para |log rate_horizon - log rate_exact| no horizonte n.

    Soma das amplitudes das somas parciais centradas de cada cauda com o
    desvio do núcleo, dividida pelo número de fatores.
    """
    total = 0.0
    for logs in (seq._neg_logs, seq._pos_logs):
        centered = np.concatenate(([0.0], np.cumsum(logs - logs.mean())))
        total += float(centered.max() - centered.min())
    worst_tail = max(abs(seq._neg_logs.mean()), abs(seq._pos_logs.mean()))
    total += float(np.abs(seq._core_logs).sum()) + len(seq.core) * worst_tail
    return total / (n + 1)
