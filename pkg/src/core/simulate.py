#!/usr/bin/env python3
"""
Módulo de simulação - vetores esparsos, operadores T_f e B_w truncados e oráculo de força bruta
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterable, List, Optional, Tuple, Union

import numpy as np

from .classify import EXACT, FAILS, HOLDS, HORIZON, UNDECIDED, Verdict
from .sequences import BACKWARD, FORWARD, sup_partial_product
from .systems import (
    AtomicSystem,
    Cycle,
    DissipativeSystem,
    MeasureSequence,
    WeightSequence,
)

logger = logging.getLogger(__name__)

# Maior |k| representável antes de recusar a operação
MAX_INDEX = 100_000

# Coeficientes relativos abaixo disso são podados
TRUNCATION_EPS = 1e-15

# Suporte máximo das funções simples aleatórias do oráculo
MAX_RANDOM_SUPPORT = 8

EXPANSIVITY_THRESHOLD = 2.0

POSITIVE = "positive"
TWOSIDED = "twosided"
UNIFORM_POSITIVE = "uniform_positive"
UNIFORM_TWOSIDED = "uniform_twosided"
MODES = (POSITIVE, TWOSIDED, UNIFORM_POSITIVE, UNIFORM_TWOSIDED)

# Sítio de T_f: (componente, índice k ou posição no ciclo, célula j)
Site = Tuple[int, int, int]
Scalar = Union[float, complex]


class PreconditionError(ValueError):
    """Pré-condição de operador violada (vetor nulo, janela de índices, inversa)."""


# ---------------------------------------------------------------------- vetores


@dataclass(frozen=True, eq=False)
class _SparseVector:
    coefficients: Dict[Hashable, Scalar]

    def __post_init__(self):
        cleaned = {s: c for s, c in dict(self.coefficients).items() if c != 0}
        object.__setattr__(self, "coefficients", cleaned)

    @property
    def p(self) -> float:
        raise NotImplementedError

    def _log_weights(self, sites: List[Hashable]) -> np.ndarray:
        raise NotImplementedError

    def _like(self, coefficients: Dict[Hashable, Scalar]):
        raise NotImplementedError

    @property
    def support(self) -> List[Hashable]:
        return sorted(self.coefficients)

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def log_norm_p(self) -> float:
        """log ‖x‖_p^p, somado em espaço logarítmico."""
        if self.is_zero:
            return -math.inf
        sites = list(self.coefficients)
        mags = np.abs(np.array([self.coefficients[s] for s in sites], dtype=complex))
        terms = self.p * np.log(mags) + self._log_weights(sites)
        return float(np.logaddexp.reduce(terms))

    def norm(self) -> float:
        if self.is_zero:
            return 0.0
        return math.exp(self.log_norm_p() / self.p)

    def __add__(self, other):
        out = dict(self.coefficients)
        for s, c in other.coefficients.items():
            out[s] = out.get(s, 0) + c
        return self._like(out)

    def __sub__(self, other):
        return self + (-1.0) * other

    def __mul__(self, scalar: Scalar):
        return self._like({s: scalar * c for s, c in self.coefficients.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return -1.0 * self

    def pruned(self, eps: float = TRUNCATION_EPS):
        """
        Remove coeficientes com |α|·peso^{1/p} < eps · ‖x‖.

        Returns:
            (vetor podado, norma da parte removida)
        """
        if self.is_zero:
            return self, 0.0
        cutoff = eps * self.norm()
        sites = list(self.coefficients)
        mags = np.abs(np.array([self.coefficients[s] for s in sites], dtype=complex))
        scaled = mags * np.exp(self._log_weights(sites) / self.p)
        keep = {s: self.coefficients[s] for s, v in zip(sites, scaled) if v >= cutoff}
        dropped = self._like({s: c for s, c in self.coefficients.items() if s not in keep})
        return self._like(keep), dropped.norm()

    def allclose(self, other, rel: float = 1e-12) -> bool:
        """Mesmo suporte e coeficientes iguais até rel relativo à maior magnitude."""
        sites = set(self.coefficients) | set(other.coefficients)
        scale = max([abs(c) for c in self.coefficients.values()] + [abs(c) for c in other.coefficients.values()] + [0.0])
        return all(
            abs(self.coefficients.get(s, 0) - other.coefficients.get(s, 0)) <= rel * max(scale, 1e-300)
            for s in sites
        )


@dataclass(frozen=True, eq=False)
class ShiftVector(_SparseVector):
    """Vetor finitamente suportado de ℓᵖ(ℤ)."""

    p: float = 1.0

    def _log_weights(self, sites):
        return np.zeros(len(sites))

    def _like(self, coefficients):
        return ShiftVector(coefficients, self.p)

    @classmethod
    def basis(cls, k: int, p: float = 1.0, scale: Scalar = 1.0) -> "ShiftVector":
        return cls({k: scale}, p)

    @classmethod
    def zero(cls, p: float = 1.0) -> "ShiftVector":
        return cls({}, p)


@dataclass(frozen=True, eq=False)
class SimpleFunction(_SparseVector):
    """
    φ = Σ α_s χ_s sobre sítios de um sistema (conjuntos f^k(B_j) ou átomos).

    ‖φ‖_p^p = Σ |α_s|^p μ(s).
    """

    operator: "CompositionOperator" = None

    @property
    def p(self) -> float:
        return self.operator.p

    def _log_weights(self, sites):
        return np.array([self.operator.log_measure(s) for s in sites], dtype=float)

    def _like(self, coefficients):
        return SimpleFunction(coefficients, self.operator)


Vector = Union[ShiftVector, SimpleFunction]


def _check_index(k: int):
    if abs(k) > MAX_INDEX:
        raise PreconditionError(f"índice {k} fora da janela representável |k| ≤ {MAX_INDEX}")


# ---------------------------------------------------------------------- operadores


class ShiftOperator:
    """Shift ponderado B_w: (B_w x)_j = w_{j+1} x_{j+1}, i.e. B_w e_k = w_k e_{k-1}."""

    def __init__(self, w: WeightSequence):
        self.w = w
        self.p = w.p
        low, _ = w.weights.bounds()
        self._invertible = low > 0

    @property
    def label(self) -> str:
        return self.w.label

    def vector(self, coefficients: Dict[int, Scalar]) -> ShiftVector:
        return ShiftVector(coefficients, self.p)

    def unit(self, site: int) -> ShiftVector:
        return ShiftVector.basis(site, self.p)

    def sample_sites(self, radius: int) -> List[int]:
        return list(range(-radius, radius + 1))

    def _log_gain(self, k: int, n: int) -> float:
        """log do fator de B_w^n e_k."""
        if n > 0:
            return float(np.sum(self.w.weights.log_values(k - n + 1, k)))
        if n < 0:
            return -float(np.sum(self.w.weights.log_values(k + 1, k - n)))
        return 0.0

    def apply(self, x: ShiftVector, n: int = 1) -> ShiftVector:
        """
        B_w^n x; n negativo usa a inversa (w_k ≠ 0 com ínfimo positivo).

        Args:
            x: Vetor esparso
            n: Número de iterações (inteiro)

        Returns:
            Novo ShiftVector
        """
        if n < 0 and not self._invertible:
            raise PreconditionError("inf |w| = 0: B_w não é invertível")
        out = {}
        for k, c in x.coefficients.items():
            _check_index(k - n)
            out[k - n] = c * math.exp(self._log_gain(k, n))
        return ShiftVector(out, x.p)

    def image_log_weights(self, site: int, ns: np.ndarray) -> np.ndarray:
        """log ‖B_w^n e_k‖_p^p para cada n em ns, via somas acumuladas."""
        lo = site - int(ns.max()) + 1 if ns.size else site
        hi = site - int(ns.min()) if ns.size else site
        lo, hi = min(lo, site + 1), max(hi, site)
        logs = self.w.weights.log_values(lo, hi)
        csum = np.concatenate(([0.0], np.cumsum(logs)))
        # C(m) = Σ_{lo ≤ j < m} log w_j; log ganho = C(k+1) - C(k-n+1)
        gains = csum[site + 1 - lo] - csum[site - ns + 1 - lo]
        return self.p * gains

    def basis_sup_log(self, site: int, direction: str) -> float:
        """
        log sup_{n ≥ 1} ‖B_w^{±n} e_k‖_p^p exato.

        FORWARD percorre iterados positivos (pesos à esquerda de k),
        BACKWARD os negativos (inversos dos pesos à direita).
        """
        seq = self.w.weights
        if direction == FORWARD:
            powered = seq if self.p == 1 else seq.map(lambda v: float(v) ** self.p)
            return _safe_log(sup_partial_product(powered, site, BACKWARD))
        inverse = seq.reciprocal() if self.p == 1 else seq.map(lambda v: float(v) ** (-self.p))
        return _safe_log(sup_partial_product(inverse, site + 1, FORWARD))

    def periodic_period(self, x: ShiftVector) -> Optional[int]:
        return None


class CompositionOperator:
    """
    T_f φ = φ ∘ f em Lᵖ de um sistema dissipativo ou atômico.

    T_f χ_{f^k(B_j)} = χ_{f^{k-1}(B_j)}: o coeficiente no sítio (c, k, j) vai
    para (c, k-1, j) nas linhas e para a posição anterior nos ciclos.
    """

    def __init__(self, system: Union[DissipativeSystem, AtomicSystem]):
        self.system = system
        self.p = system.p
        self._lines: Dict[Tuple[int, int], MeasureSequence] = {}
        self._cache: Dict[Site, float] = {}

    @property
    def label(self) -> str:
        return self.system.label

    def _component(self, c: int):
        if isinstance(self.system, DissipativeSystem):
            if c != 0:
                raise PreconditionError("sistema dissipativo tem um único componente (0)")
            return None
        return self.system.components[c]

    def line_measures(self, c: int, j: int = 0) -> MeasureSequence:
        """Sequência de medidas da órbita do sítio (c, ·, j)."""
        key = (c, j)
        if key not in self._lines:
            comp = self._component(c)
            if comp is None:
                self._lines[key] = self.system.cell_line(j)
            elif isinstance(comp, Cycle):
                raise PreconditionError(f"componente {c} é um ciclo")
            else:
                self._lines[key] = comp.measures
        return self._lines[key]

    def log_measure(self, site: Site) -> float:
        if site not in self._cache:
            c, k, j = site
            comp = self._component(c)
            if isinstance(comp, Cycle):
                value = math.log(float(comp.measures[k]))
            else:
                _check_index(k)
                value = float(self.line_measures(c, j).log_measures(k, k)[0])
            self._cache[site] = value
        return self._cache[site]

    def characteristic(self, c: int, k: int, j: int = 0, scale: Scalar = 1.0) -> SimpleFunction:
        return SimpleFunction({(c, k, j): scale}, self)

    def unit(self, site: Site) -> SimpleFunction:
        """χ_s / μ(s)^{1/p}."""
        return SimpleFunction({site: math.exp(-self.log_measure(site) / self.p)}, self)

    def vector(self, coefficients: Dict[Site, Scalar]) -> SimpleFunction:
        return SimpleFunction(coefficients, self)

    def sample_sites(self, radius: int) -> List[Site]:
        """Sítios com |k| ≤ radius em toda linha e todas as posições de cada ciclo."""
        if isinstance(self.system, DissipativeSystem):
            return [(0, k, j) for k in range(-radius, radius + 1) for j in range(self.system.n_cells)]
        sites = []
        for c, comp in enumerate(self.system.components):
            if isinstance(comp, Cycle):
                sites.extend((c, a, 0) for a in range(len(comp.measures)))
            else:
                sites.extend((c, k, 0) for k in range(-radius, radius + 1))
        return sites

    def _move(self, site: Site, n: int) -> Site:
        c, k, j = site
        comp = self._component(c)
        if isinstance(comp, Cycle):
            return c, (k - n) % len(comp.measures), j
        _check_index(k - n)
        return c, k - n, j

    def apply(self, phi: SimpleFunction, n: int = 1) -> SimpleFunction:
        """
        T_f^n φ: reindexação exata dos coeficientes ao longo das órbitas.

        Args:
            phi: Função simples deste sistema
            n: Número de iterações (negativo usa T_{f⁻¹})

        Returns:
            Nova SimpleFunction
        """
        if phi.operator is not self:
            raise PreconditionError("função simples pertence a outro operador")
        out = {}
        for site, coef in phi.coefficients.items():
            target = self._move(site, n)
            out[target] = out.get(target, 0) + coef
        return SimpleFunction(out, self)

    def image_log_weights(self, site: Site, ns: np.ndarray) -> np.ndarray:
        """log μ(f^{-n}(s)) para cada n em ns."""
        c, k, j = site
        comp = self._component(c)
        if isinstance(comp, Cycle):
            logs = np.log(np.array([float(m) for m in comp.measures]))
            return logs[(k - ns) % len(comp.measures)]
        lo, hi = k - int(ns.max()), k - int(ns.min())
        table = self.line_measures(c, j).log_measures(lo, hi)
        return table[k - ns - lo]

    def basis_sup_log(self, site: Site, direction: str) -> float:
        """
        log sup_{n ≥ 1} ‖T_f^{±n} u_s‖_p^p exato para um sítio de linha.

        ‖T_f^n u_k‖^p = μ_{k-n}/μ_k (FORWARD); ‖T_f^{-n} u_k‖^p = μ_{k+n}/μ_k (BACKWARD).
        """
        c, k, j = site
        ratio = self.line_measures(c, j).ratio
        if direction == FORWARD:
            return _safe_log(sup_partial_product(ratio.reciprocal(), k - 1, BACKWARD))
        return _safe_log(sup_partial_product(ratio, k, FORWARD))

    def periodic_period(self, x: SimpleFunction) -> Optional[int]:
        """Período comum da órbita se o suporte está todo em ciclos, senão None."""
        if isinstance(self.system, DissipativeSystem):
            return None
        lengths = []
        for c, _, _ in x.coefficients:
            comp = self.system.components[c]
            if not isinstance(comp, Cycle):
                return None
            lengths.append(len(comp.measures))
        return math.lcm(*lengths) if lengths else None


Operator = Union[ShiftOperator, CompositionOperator]


def _safe_log(value: float) -> float:
    return math.inf if math.isinf(value) else math.log(value)


def apply_composition(system: Union[DissipativeSystem, AtomicSystem], phi: SimpleFunction, n: int) -> SimpleFunction:
    """T_f^n φ para φ construída sobre um CompositionOperator deste sistema."""
    if phi.operator is None or phi.operator.system is not system:
        raise PreconditionError("φ não foi construída sobre este sistema")
    return phi.operator.apply(phi, n)


def apply_shift(w: WeightSequence, x: ShiftVector, n: int) -> ShiftVector:
    """B_w^n x."""
    return ShiftOperator(w).apply(x, n)


def orbit_norms(operator: Operator, x: Vector, n_range: Iterable[int]) -> List[float]:
    """
    ‖Tⁿx‖_p para n em n_range, avançando a partir do iterado anterior.

    Args:
        operator: ShiftOperator ou CompositionOperator
        x: Vetor não nulo
        n_range: Iteráveis de inteiros (qualquer ordem)

    Returns:
        Lista de normas
    """
    if x.is_zero:
        raise PreconditionError("orbit_norms exige x ≠ 0")
    norms = []
    current, at = x, 0
    for n in n_range:
        current = operator.apply(current, n - at)
        at = n
        norms.append(current.norm())
    return norms


def log_orbit_norms_p(operator: Operator, x: Vector, ns: np.ndarray) -> np.ndarray:
    """log ‖Tⁿx‖_p^p para todos os n de ns de uma vez (sem aplicar o operador)."""
    ns = np.asarray(ns, dtype=int)
    rows = []
    for site, coef in x.coefficients.items():
        rows.append(x.p * math.log(abs(coef)) + operator.image_log_weights(site, ns))
    return np.logaddexp.reduce(np.vstack(rows), axis=0)


# ---------------------------------------------------------------------- oráculo


@dataclass
class _Sample:
    vector: Vector
    site: Optional[Hashable] = None
    forward: np.ndarray = field(default=None, repr=False)
    backward: np.ndarray = field(default=None, repr=False)


def _random_unit(operator: Operator, pool: List[Hashable], rng: np.random.Generator) -> Vector:
    size = int(rng.integers(1, MAX_RANDOM_SUPPORT + 1))
    picks = rng.choice(len(pool), size=min(size, len(pool)), replace=False)
    coefs = rng.standard_normal(len(picks))
    x = operator.vector({pool[int(i)]: float(c) for i, c in zip(picks, coefs)})
    return (1.0 / x.norm()) * x


def _certificate(operator: Operator, sample: _Sample, mode: str, threshold_log: float) -> Optional[Dict]:
    """Prova de que a amostra nunca atinge norma 2, se disponível."""
    period = operator.periodic_period(sample.vector)
    if period is not None:
        logs = log_orbit_norms_p(operator, sample.vector, np.arange(1, period + 1))
        if logs.max() < threshold_log:
            return {"kind": "periodicity", "period": period, "max_norm": math.exp(logs.max() / operator.p)}
        return None
    if sample.site is None or (isinstance(sample.site, tuple) and _is_cycle_site(operator, sample.site)):
        return None
    sup_fwd = operator.basis_sup_log(sample.site, FORWARD)
    if mode in (POSITIVE, UNIFORM_POSITIVE):
        if sup_fwd < threshold_log:
            return {"kind": "constant_rate", "site": sample.site, "sup_norm": math.exp(sup_fwd / operator.p)}
        return None
    sup_bwd = operator.basis_sup_log(sample.site, BACKWARD)
    if max(sup_fwd, sup_bwd) < threshold_log:
        return {"kind": "constant_rate", "site": sample.site, "sup_norm": math.exp(max(sup_fwd, sup_bwd) / operator.p)}
    return None


def _is_cycle_site(operator: Operator, site: Site) -> bool:
    return isinstance(operator, CompositionOperator) and isinstance(operator._component(site[0]), Cycle)


def brute_force_expansivity(
    operator: Operator,
    mode: str = POSITIVE,
    horizon: int = 50,
    samples: int = 16,
    seed: int = 0,
) -> Verdict:
    """
    Avalia diretamente a definição ‖Tⁿx‖ ≥ 2 em vetores unitários amostrados.

    Amostras: todos os vetores da base normalizada com |k| ≤ horizon e
    funções simples aleatórias (semente fixa). Holds quando toda amostra
    cruza 2 com |n| ≤ horizon (nos modos uniformes, com o mesmo n); Fails
    só com certificado (periodicidade ou supremo exato da órbita de um
    vetor da base abaixo de 2); caso contrário Undecided.

    Args:
        operator: ShiftOperator ou CompositionOperator
        mode: Um de MODES
        horizon: N
        samples: Quantidade de funções simples aleatórias (≥ 1)
        seed: Semente

    Returns:
        Verdict com testemunhas por amostra ou certificado
    """
    if mode not in MODES:
        raise ValueError(f"modo desconhecido: {mode}")
    if samples < 1:
        raise PreconditionError("samples deve ser ≥ 1")
    threshold_log = operator.p * math.log(EXPANSIVITY_THRESHOLD) - 1e-12
    rng = np.random.default_rng(seed)

    pool = operator.sample_sites(horizon)
    batch = [_Sample(operator.unit(s), s) for s in pool]
    batch += [_Sample(_random_unit(operator, pool, rng)) for _ in range(samples)]

    ns = np.arange(1, horizon + 1)
    for sample in batch:
        sample.forward = log_orbit_norms_p(operator, sample.vector, ns) >= threshold_log
        if mode in (TWOSIDED, UNIFORM_TWOSIDED):
            sample.backward = log_orbit_norms_p(operator, sample.vector, -ns) >= threshold_log

    for idx, sample in enumerate(batch):
        crossed = sample.forward if sample.backward is None else sample.forward | sample.backward
        if crossed.any():
            continue
        cert = _certificate(operator, sample, mode, threshold_log)
        if cert is not None:
            cert["sample"] = idx
            logger.debug("certificado de falha: %s", cert)
            return Verdict(FAILS, EXACT, "D21", cert, None, "amostra nunca atinge norma 2")

    if mode in (POSITIVE, TWOSIDED):
        witnesses = []
        for sample in batch:
            hits = np.nonzero(sample.forward)[0]
            n_fwd = int(ns[hits[0]]) if hits.size else None
            n_bwd = None
            if sample.backward is not None:
                back = np.nonzero(sample.backward)[0]
                n_bwd = -int(ns[back[0]]) if back.size else None
            options = [n for n in (n_fwd, n_bwd) if n is not None]
            if not options:
                return Verdict(UNDECIDED, HORIZON, "D21", {"horizon": horizon}, None, f"horizon {horizon} exhausted")
            witnesses.append(min(options, key=lambda n: (abs(n), -n)))
        return Verdict(HOLDS, HORIZON, "D21", {"per_sample": witnesses, "horizon": horizon}, None)

    table = np.vstack([s.forward if s.backward is None else s.forward | s.backward for s in batch])
    common = np.nonzero(table.all(axis=0))[0]
    if common.size:
        return Verdict(HOLDS, HORIZON, "D21", {"n": int(ns[common[0]]), "horizon": horizon}, None)
    return Verdict(UNDECIDED, HORIZON, "D21", {"horizon": horizon}, None, f"horizon {horizon} exhausted")


ORACLE_MODES = {
    "PE": POSITIVE,
    "E": TWOSIDED,
    "UPE": UNIFORM_POSITIVE,
    "UE": UNIFORM_TWOSIDED,
}


def oracle_disagreement(exact: Verdict, oracle: Verdict) -> bool:
    """True se o oráculo afirma o oposto de um veredicto exato decidido."""
    return (exact.fails and oracle.holds) or (exact.holds and oracle.fails)
