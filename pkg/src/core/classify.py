#!/usr/bin/env python3
"""
Módulo de classificação - veredictos exatos com citação de teorema e auditoria de implicações
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .sequences import (
    BACKWARD,
    FORWARD,
    INF_ALL_K,
    INF_K_IN_NATURALS,
    INF_K_IN_NEGATIVES,
    NEG,
    POS,
    SUP_ALL_K,
    SUP_K_IN_NATURALS,
    SUP_K_IN_NEGATIVES,
    first_crossing,
    rate_exact,
    rate_horizon,
    rate_sign,
    stable_crossing,
    tail_sign,
)
from .systems import (
    AtomicSystem,
    Cycle,
    DissipativeSystem,
    InvalidSystemError,
    MeasureSequence,
    WeightSequence,
    check_bounded_distortion,
    fingerprint,
    shift_to_measures,
    side_rates,
)

logger = logging.getLogger(__name__)

HOLDS = "Holds"
FAILS = "Fails"
UNDECIDED = "Undecided"

EXACT = "exact"
HORIZON = "horizon"

CITATIONS = {
    "E1", "E2", "E3", "E4",
    "ED1", "ED2", "ED3", "ED4",
    "UE1", "UE2", "UE3",
    "HC", "HD", "GH",
    "P41", "SC1", "SC2", "W", "C",
    "B", "B-a", "B-b", "B-c", "B-cor",
    "T24", "T25a", "T25b", "D21",
    "OpenProblem",
}

PROPERTIES = (
    "PE",
    "E",
    "UPE",
    "UE",
    "Shadowing",
    "Hyperbolic",
    "GeneralizedHyperbolic",
    "SSS",
    "StructStable",
)
ATOMIC_PROPERTIES = ("PE", "E", "UPE", "UE")

# Limiar de ‖Tⁿx‖ da definição de expansividade
EXPANSIVITY_THRESHOLD = 2.0

# Fator de μ_{-n}/μ_0 usado como testemunha de expansividade positiva
WITNESS_GROWTH = 1e6

# Margem mínima (distância logarítmica a 1) para exigir concordância exato × horizonte
AGREEMENT_GATE = 0.05

# Raio dos sítios k dos conjuntos sorteados pelo amostrador atômico
SAMPLE_SITE_SPAN = 20


@dataclass(frozen=True)
class Verdict:
    """
    Veredicto de uma propriedade dinâmica.

    Args:
        status: HOLDS, FAILS ou UNDECIDED
        method: EXACT ou HORIZON
        citation: Etiqueta do teorema usado
        witness: Evidência numérica opcional
        margin: Distância logarítmica da taxa decisiva a 1
        note: Observação livre
    """

    status: str
    method: str
    citation: str
    witness: Any = None
    margin: Optional[float] = None
    note: str = ""

    def __post_init__(self):
        if self.status not in (HOLDS, FAILS, UNDECIDED):
            raise ValueError(f"status inválido: {self.status}")
        if self.method not in (EXACT, HORIZON):
            raise ValueError(f"método inválido: {self.method}")
        if self.citation not in CITATIONS:
            raise ValueError(f"citação desconhecida: {self.citation}")
        if self.status == UNDECIDED:
            if self.citation != "OpenProblem" and "horizon" not in self.note:
                raise ValueError("Undecided exige citação OpenProblem ou nota de horizonte esgotado")
        elif self.citation == "OpenProblem":
            raise ValueError("Holds/Fails exigem etiqueta de teorema")

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    @property
    def fails(self) -> bool:
        return self.status == FAILS


@dataclass
class ClassificationReport:
    """Um veredicto por propriedade, impressão digital do sistema e taxas laterais."""

    label: str
    kind: str
    fingerprint: str
    side_rates: Tuple[float, float]
    verdicts: Dict[str, Verdict]
    p: float = 1.0
    extras: Dict[str, Any] = field(default_factory=dict)

    def __getitem__(self, prop: str) -> Verdict:
        return self.verdicts[prop]

    def status(self, prop: str) -> str:
        return self.verdicts[prop].status


# ---------------------------------------------------------------------- margens


def _log_margin(rate: float) -> float:
    return abs(math.log(rate))


def _all_margin(parts: List[Tuple[bool, float]]) -> float:
    """Margem de uma conjunção: mínima se vale, máxima entre as partes que falham se não vale."""
    if all(ok for ok, _ in parts):
        return min(m for _, m in parts)
    return max(m for ok, m in parts if not ok)


def _any_margin(conds: List[Tuple[bool, float]]) -> float:
    """Margem de uma disjunção: máxima entre as que valem, senão mínima."""
    if any(ok for ok, _ in conds):
        return max(m for ok, m in conds if ok)
    return min(m for _, m in conds)


# ---------------------------------------------------------------------- sistema dissipativo


@dataclass(frozen=True)
class _Rates:
    g_neg: float
    g_pos: float
    s_neg: int
    s_pos: int

    @property
    def m_neg(self) -> float:
        return _log_margin(self.g_neg)

    @property
    def m_pos(self) -> float:
        return _log_margin(self.g_pos)

    def witness(self, **extra) -> Dict[str, Any]:
        data = {"g_neg": self.g_neg, "g_pos": self.g_pos}
        data.update(extra)
        return data


def _rates_of(ms: MeasureSequence) -> _Rates:
    g_neg, g_pos = side_rates(ms)
    return _Rates(g_neg, g_pos, tail_sign(ms.ratio, NEG), tail_sign(ms.ratio, POS))


def _require_distortion(system: DissipativeSystem) -> _Rates:
    result = check_bounded_distortion(system)
    if not result.ok:
        raise InvalidSystemError(
            f"(◊) falha: K declarado {system.K} < K_min {result.K_min} em {result.witness}"
        )
    return _rates_of(system.measures)


def _first_growth_index(ms: MeasureSequence, factor: float) -> Optional[int]:
    """Menor n ≥ 1 com μ_{-n} > factor · μ_0 (None quando μ_{-n} fica limitada)."""
    return first_crossing(ms.ratio.reciprocal(), -1, BACKWARD, math.log(factor))


def classify_positively_expansive(system: DissipativeSystem) -> Verdict:
    """
    Expansividade positiva: vale sse sup_n μ(f^{-n}(W)) = ∞, i.e. g⁻ < 1.

    Args:
        system: Sistema dissipativo com distorção limitada

    Returns:
        Verdict com testemunha n tal que μ_{-n} > 10⁶ μ_0 quando vale
    """
    r = _require_distortion(system)
    if r.s_neg < 0:
        n = _first_growth_index(system.measures, WITNESS_GROWTH)
        return Verdict(HOLDS, EXACT, "ED1", r.witness(n=n), r.m_neg)
    return Verdict(FAILS, EXACT, "ED1", r.witness(), r.m_neg)


def classify_expansive(system: DissipativeSystem) -> Verdict:
    """Expansividade: vale sse sup_{n∈ℤ} μ(fⁿ(W)) = ∞, i.e. g⁻ < 1 ou g⁺ > 1."""
    r = _require_distortion(system)
    conds = [(r.s_neg < 0, r.m_neg), (r.s_pos > 0, r.m_pos)]
    status = HOLDS if any(ok for ok, _ in conds) else FAILS
    return Verdict(status, EXACT, "ED2", r.witness(), _any_margin(conds))


def classify_uniformly_positively_expansive(system: DissipativeSystem) -> Verdict:
    """Expansividade positiva uniforme: lim μ(f^{-n}(W)) = ∞, i.e. g⁻ < 1."""
    r = _require_distortion(system)
    status = HOLDS if r.s_neg < 0 else FAILS
    return Verdict(status, EXACT, "ED3", r.witness(), r.m_neg)


def classify_uniformly_expansive(system: DissipativeSystem) -> Verdict:
    """
    Expansividade uniforme via 𝒰ℰ1 (min > 1), 𝒰ℰ2 (max < 1) ou 𝒰ℰ3 (g⁺ > 1 e g⁻ < 1).

    Args:
        system: Sistema dissipativo com distorção limitada

    Returns:
        Verdict cuja citação registra a condição disparada
    """
    r = _require_distortion(system)
    conds = {
        "UE1": [(r.s_neg > 0, r.m_neg), (r.s_pos > 0, r.m_pos)],
        "UE2": [(r.s_neg < 0, r.m_neg), (r.s_pos < 0, r.m_pos)],
        "UE3": [(r.s_pos > 0, r.m_pos), (r.s_neg < 0, r.m_neg)],
    }
    summary = [(all(ok for ok, _ in parts), _all_margin(parts)) for parts in conds.values()]
    margin = _any_margin(summary)
    for tag, parts in conds.items():
        if all(ok for ok, _ in parts):
            return Verdict(HOLDS, EXACT, tag, r.witness(), margin)
    return Verdict(FAILS, EXACT, "ED4", r.witness(), margin)


def classify_shadowing_gh(system: DissipativeSystem) -> Tuple[Verdict, Verdict, Verdict]:
    """
    Condições ℋ𝒞, ℋ𝒟 e 𝒢ℋ nas taxas laterais.

    ℋ𝒞 ⟺ min(g⁻, g⁺) > 1; ℋ𝒟 ⟺ max(g⁻, g⁺) < 1; 𝒢ℋ ⟺ g⁻ > 1 e g⁺ < 1.
    Desigualdades estritas: taxa = 1 não dispara nenhuma condição.

    Args:
        system: Sistema dissipativo com distorção limitada

    Returns:
        (shadowing, gh, hyperbolic)
    """
    r = _require_distortion(system)
    conds = {
        "HC": [(r.s_neg > 0, r.m_neg), (r.s_pos > 0, r.m_pos)],
        "HD": [(r.s_neg < 0, r.m_neg), (r.s_pos < 0, r.m_pos)],
        "GH": [(r.s_neg > 0, r.m_neg), (r.s_pos < 0, r.m_pos)],
    }
    fired = {tag: all(ok for ok, _ in parts) for tag, parts in conds.items()}
    margins = {tag: _all_margin(parts) for tag, parts in conds.items()}

    hyp_tags = ("HC", "HD")
    hyp_margin = _any_margin([(fired[t], margins[t]) for t in hyp_tags])
    hyp_fired = next((t for t in hyp_tags if fired[t]), None)
    if hyp_fired:
        hyperbolic = Verdict(HOLDS, EXACT, hyp_fired, r.witness(), hyp_margin)
    else:
        hyperbolic = Verdict(FAILS, EXACT, "SC1", r.witness(), hyp_margin, "nem ℋ𝒞 nem ℋ𝒟")

    gh_margin = _any_margin([(fired[t], margins[t]) for t in conds])
    gh_fired = next((t for t in conds if fired[t]), None)
    if gh_fired:
        gh = Verdict(HOLDS, EXACT, gh_fired, r.witness(), gh_margin)
        shadowing = Verdict(HOLDS, EXACT, "SC2", r.witness(condition=gh_fired), gh_margin)
    else:
        gh = Verdict(FAILS, EXACT, "SC2", r.witness(), gh_margin, "nenhuma de ℋ𝒞, ℋ𝒟, 𝒢ℋ")
        shadowing = Verdict(FAILS, EXACT, "SC2", r.witness(), gh_margin, "sombreamento ⟺ hiperbolicidade generalizada")
    return shadowing, gh, hyperbolic


def classify_not_structurally_stable(system: DissipativeSystem) -> Verdict:
    """
    Certificado de não estabilidade estrutural: g⁺ > 1 e g⁻ < 1.

    Holds significa "certificadamente NÃO estruturalmente estável".
    """
    r = _require_distortion(system)
    parts = [(r.s_pos > 0, r.m_pos), (r.s_neg < 0, r.m_neg)]
    status = HOLDS if all(ok for ok, _ in parts) else FAILS
    return Verdict(status, EXACT, "P41", r.witness(), _all_margin(parts))


def classify_sss(system: DissipativeSystem) -> Verdict:
    """
    Estabilidade estrutural forte pela tabela de decisão.

    (i) sombreamento ⇒ SSS; (ii) expansividade positiva sem sombreamento ⇒ não SSS;
    (iii) certificado P41 ⇒ não SSS; (iv) caso contrário, problema em aberto.

    Args:
        system: Sistema dissipativo com distorção limitada

    Returns:
        Verdict (nunca adivinha: casos não cobertos ficam Undecided)
    """
    shadowing, _, _ = classify_shadowing_gh(system)
    if shadowing.holds:
        return Verdict(HOLDS, EXACT, "SC1", shadowing.witness, shadowing.margin, "ramo (i): sombreamento")
    pe = classify_positively_expansive(system)
    if pe.holds:
        return Verdict(FAILS, EXACT, "C", pe.witness, pe.margin, "ramo (ii): expansivo positivo sem sombreamento")
    p41 = classify_not_structurally_stable(system)
    if p41.holds:
        return Verdict(FAILS, EXACT, "P41", p41.witness, p41.margin, "ramo (iii)")
    return Verdict(UNDECIDED, EXACT, "OpenProblem", shadowing.witness, None, "ramo (iv): nenhum teorema decide")


def classify_structurally_stable(system: DissipativeSystem, sss: Verdict, pe: Verdict, hyperbolic: Verdict) -> Verdict:
    """Estabilidade estrutural: segue de SSS; falha por P41 ou por expansivo positivo não hiperbólico."""
    if sss.holds:
        return Verdict(HOLDS, EXACT, sss.citation, sss.witness, sss.margin, "SSS ⇒ estabilidade estrutural")
    p41 = classify_not_structurally_stable(system)
    if p41.holds:
        return Verdict(FAILS, EXACT, "P41", p41.witness, p41.margin)
    if pe.holds and hyperbolic.fails:
        return Verdict(FAILS, EXACT, "T25b", pe.witness, min(pe.margin, hyperbolic.margin))
    return Verdict(UNDECIDED, EXACT, "OpenProblem", None, None, "fora do alcance de P41 e do Teorema C")


def classify_dissipative(system: DissipativeSystem) -> ClassificationReport:
    """
    Relatório completo de um sistema dissipativo com distorção limitada.

    Args:
        system: Sistema dissipativo

    Returns:
        ClassificationReport com as nove propriedades
    """
    rates = _require_distortion(system)
    pe = classify_positively_expansive(system)
    shadowing, gh, hyperbolic = classify_shadowing_gh(system)
    sss = classify_sss(system)
    verdicts = {
        "PE": pe,
        "E": classify_expansive(system),
        "UPE": classify_uniformly_positively_expansive(system),
        "UE": classify_uniformly_expansive(system),
        "Shadowing": shadowing,
        "Hyperbolic": hyperbolic,
        "GeneralizedHyperbolic": gh,
        "SSS": sss,
        "StructStable": classify_structurally_stable(system, sss, pe, hyperbolic),
    }
    logger.debug("classificado %s: %s", system.label, {k: v.status for k, v in verdicts.items()})
    return ClassificationReport(
        label=system.label,
        kind="dissipative",
        fingerprint=fingerprint(system),
        side_rates=(rates.g_neg, rates.g_pos),
        verdicts=verdicts,
        p=system.p,
    )


# ---------------------------------------------------------------------- shifts ponderados


def classify_shift(w: WeightSequence) -> Tuple[Verdict, Verdict, Verdict]:
    """
    Caracterização de B_w pelas médias geométricas GM⁻, GM⁺ das caudas de |w|.

    a) max < 1; b) min > 1; c) GM⁻ < 1 e GM⁺ > 1. SSS ⟺ a ∨ b ∨ c;
    sombreamento ⟺ SSS; hiperbólico ⟺ a ∨ b.

    Args:
        w: Sequência de pesos (inf > 0)

    Returns:
        (sss, shadowing, hyperbolic)
    """
    low, _ = w.weights.bounds()
    if not low > 0:
        raise InvalidSystemError("inf |w| = 0: B_w não é invertível")
    seq = w.weights
    gm_neg = rate_exact(seq, SUP_K_IN_NEGATIVES, BACKWARD)
    gm_pos = rate_exact(seq, SUP_K_IN_NATURALS, FORWARD)
    s_neg, s_pos = tail_sign(seq, NEG), tail_sign(seq, POS)
    m_neg, m_pos = _log_margin(gm_neg), _log_margin(gm_pos)
    witness = {"gm_neg": gm_neg, "gm_pos": gm_pos}

    conds = {
        "B-a": [(s_neg < 0, m_neg), (s_pos < 0, m_pos)],
        "B-b": [(s_neg > 0, m_neg), (s_pos > 0, m_pos)],
        "B-c": [(s_neg < 0, m_neg), (s_pos > 0, m_pos)],
    }
    fired = {tag: all(ok for ok, _ in parts) for tag, parts in conds.items()}
    margins = {tag: _all_margin(parts) for tag, parts in conds.items()}

    sss_margin = _any_margin([(fired[t], margins[t]) for t in conds])
    sss_tag = next((t for t in conds if fired[t]), None)
    if sss_tag:
        sss = Verdict(HOLDS, EXACT, sss_tag, witness, sss_margin)
        shadowing = Verdict(HOLDS, EXACT, "B-cor", witness, sss_margin, f"via {sss_tag}")
    else:
        sss = Verdict(FAILS, EXACT, "B", witness, sss_margin, "nenhuma de a), b), c)")
        shadowing = Verdict(FAILS, EXACT, "B-cor", witness, sss_margin)

    hyp_margin = _any_margin([(fired[t], margins[t]) for t in ("B-a", "B-b")])
    hyp_tag = next((t for t in ("B-a", "B-b") if fired[t]), None)
    if hyp_tag:
        hyperbolic = Verdict(HOLDS, EXACT, hyp_tag, witness, hyp_margin)
    else:
        hyperbolic = Verdict(FAILS, EXACT, "B", witness, hyp_margin, "nem a) nem b)")
    return sss, shadowing, hyperbolic


def classify_shift_report(w: WeightSequence) -> ClassificationReport:
    """
    Relatório completo de B_w.

    As propriedades de expansividade vêm do sistema dissipativo com
    μ_{k-1}/μ_k = w_k^p, cujo T_f é isometricamente B_w (K = 1).
    """
    sss, shadowing, hyperbolic = classify_shift(w)
    twin = shift_to_measures(w)
    pe = classify_positively_expansive(twin)
    gh = Verdict(sss.status, EXACT, sss.citation, sss.witness, sss.margin, "𝒢ℋ ⟺ a ∨ b ∨ c para shifts")
    verdicts = {
        "PE": pe,
        "E": classify_expansive(twin),
        "UPE": classify_uniformly_positively_expansive(twin),
        "UE": classify_uniformly_expansive(twin),
        "Shadowing": shadowing,
        "Hyperbolic": hyperbolic,
        "GeneralizedHyperbolic": gh,
        "SSS": sss,
        "StructStable": classify_structurally_stable(twin, sss, pe, hyperbolic),
    }
    g_neg, g_pos = side_rates(twin.measures)
    return ClassificationReport(
        label=w.label,
        kind="shift",
        fingerprint=fingerprint(w),
        side_rates=(g_neg, g_pos),
        verdicts=verdicts,
        p=w.p,
    )


# ---------------------------------------------------------------------- sistemas atômicos

POSITIVE = "positive"
TWOSIDED = "twosided"


def _cycle_sup(cycle: Cycle) -> float:
    return max(float(m) for m in cycle.measures)


def classify_atomic_expansive(system: AtomicSystem, mode: str = POSITIVE) -> Verdict:
    """
    Expansividade (positiva ou bilateral) átomo a átomo.

    Um ciclo mantém μ(f^{-n}(a)) limitado; uma linha vale sse a direção
    correspondente é ilimitada (g⁻ < 1, ou g⁺ > 1 no modo bilateral).

    Args:
        system: Sistema atômico
        mode: POSITIVE ou TWOSIDED

    Returns:
        Verdict com testemunha do primeiro componente violador
    """
    tag = "E1" if mode == POSITIVE else "E2"
    for i, comp in enumerate(system.components):
        if isinstance(comp, Cycle):
            return Verdict(FAILS, EXACT, tag, {"component": i, "per_atom_sup": _cycle_sup(comp)}, None, "ciclo: órbita limitada")
    margins = []
    for i, comp in system.lines:
        r = _rates_of(comp.measures)
        conds = [(r.s_neg < 0, r.m_neg)]
        if mode == TWOSIDED:
            conds.append((r.s_pos > 0, r.m_pos))
        ok = any(c for c, _ in conds)
        margins.append((ok, _any_margin(conds)))
        if not ok:
            return Verdict(FAILS, EXACT, tag, r.witness(component=i), _any_margin(conds))
    return Verdict(HOLDS, EXACT, tag, {"lines": len(margins)}, min(m for _, m in margins))


def _line_orientation(r: _Rates) -> Optional[str]:
    """Condição 𝒰ℰ satisfeita por uma linha isolada, se alguma."""
    if r.s_neg > 0 and r.s_pos > 0:
        return "UE1"
    if r.s_neg < 0 and r.s_pos < 0:
        return "UE2"
    if r.s_pos > 0 and r.s_neg < 0:
        return "UE3"
    return None


def _site_class(orientation: str, k: int) -> str:
    """Classe (𝒜: cresce para frente, 𝒞: cresce para trás) do sítio k de uma linha."""
    if orientation == "UE1":
        return "A"
    if orientation in ("UE2", "UPE"):
        return "C"
    return "A" if k >= 0 else "C"


def classify_atomic_uniform(
    system: AtomicSystem,
    mode: str = POSITIVE,
    horizon: int = 200,
    sample_budget: int = 64,
    seed: int = 0,
) -> Verdict:
    """
    Expansividade uniforme (positiva ou bilateral) de um sistema atômico finito.

    Regra exata: ciclos falham; no modo positivo toda linha precisa de g⁻ < 1;
    no bilateral cada linha precisa satisfazer 𝒰ℰ1, 𝒰ℰ2 ou 𝒰ℰ3. Conjuntos que
    misturam sítios de classes diferentes herdam a classe da metade com medida
    ≥ 1/2. Um amostrador confere a regra com conjuntos finitos aleatórios.

    Args:
        system: Sistema atômico
        mode: POSITIVE ou TWOSIDED
        horizon: n mínimo do amostrador (ampliado pelas taxas exatas das linhas)
        sample_budget: Quantidade de conjuntos aleatórios
        seed: Semente do gerador

    Returns:
        Verdict; Undecided só se o amostrador contradiz a regra exata
    """
    tag = "E3" if mode == POSITIVE else "E4"
    if system.cycles:
        i, comp = system.cycles[0]
        return Verdict(FAILS, EXACT, tag, {"component": i, "per_atom_sup": _cycle_sup(comp)}, None, "ciclo: razões limitadas")

    orientations = {}
    margins = []
    for i, comp in system.lines:
        r = _rates_of(comp.measures)
        if mode == POSITIVE:
            orientation = "UPE" if r.s_neg < 0 else None
            margin = r.m_neg
        else:
            orientation = _line_orientation(r)
            margin = min(r.m_neg, r.m_pos)
        margins.append(margin)
        if orientation is None:
            return Verdict(FAILS, EXACT, tag, r.witness(component=i), margin)
        orientations[i] = orientation

    log_threshold = system.p * math.log(EXPANSIVITY_THRESHOLD)
    n = max(horizon, _sampler_horizon(system, orientations, log_threshold))
    rng = np.random.default_rng(seed)
    line_ids = sorted(orientations)
    worst = math.inf
    for _ in range(sample_budget):
        size = int(rng.integers(1, 9))
        sites = {
            (line_ids[int(rng.integers(len(line_ids)))], int(rng.integers(-SAMPLE_SITE_SPAN, SAMPLE_SITE_SPAN + 1)))
            for _ in range(size)
        }
        log_ratio = _sampled_set_growth(system, orientations, sites, n)
        worst = min(worst, log_ratio)
        if log_ratio < log_threshold:
            logger.error("amostrador contradiz a regra exata: conjunto %s, log-razão %.6g", sorted(sites), log_ratio)
            return Verdict(
                UNDECIDED, HORIZON, tag, {"sites": sorted(sites), "log_ratio": log_ratio, "n": n}, None,
                f"horizon sampler contradicts exact rule at n={n}",
            )
    witness = {"sampled_min_log_ratio": worst, "n": n, "orientations": orientations}
    return Verdict(HOLDS, EXACT, tag, witness, min(margins))


def _site_walk(ms: MeasureSequence, cls: str, k: int):
    """(sequência, início, direção) cujas somas parciais são log μ_{k±n}/μ_k."""
    if cls == "A":
        return ms.ratio, k, FORWARD
    return ms.ratio.reciprocal(), k - 1, BACKWARD


def _sampler_horizon(system: AtomicSystem, orientations: Dict[int, str], log_threshold: float) -> int:
    """
    Menor n a partir do qual todo sítio amostrável cresce por 2·2^p na direção da
    sua classe; a metade dominante de qualquer conjunto então passa do limiar.
    """
    target = log_threshold + math.log(2)
    needed = 1
    for i, orientation in orientations.items():
        ms = system.components[i].measures
        for k in range(-SAMPLE_SITE_SPAN, SAMPLE_SITE_SPAN + 1):
            n = stable_crossing(*_site_walk(ms, _site_class(orientation, k), k), target)
            if n is None:
                raise InvalidSystemError(f"linha {i} sem crescimento na direção {orientation} em k={k}")
            needed = max(needed, n)
    return needed


def _sampled_set_growth(system: AtomicSystem, orientations: Dict[int, str], sites, horizon: int) -> float:
    """log de μ(f^{±n}(B))/μ(B) na direção da metade dominante de B."""
    mass = {"A": [], "C": []}
    fwd, bwd = [], []
    for i, k in sites:
        ms = system.components[i].measures
        mass[_site_class(orientations[i], k)].append(ms.log_measure(k))
        fwd.append(ms.log_measure(k + horizon))
        bwd.append(ms.log_measure(k - horizon))
    log_a = float(np.logaddexp.reduce(mass["A"])) if mass["A"] else -math.inf
    log_c = float(np.logaddexp.reduce(mass["C"])) if mass["C"] else -math.inf
    total = float(np.logaddexp(log_a, log_c))
    moved = fwd if log_a >= total - math.log(2) else bwd
    return float(np.logaddexp.reduce(moved)) - total


# ---------------------------------------------------------------------- horizonte


@dataclass(frozen=True)
class HorizonCheck:
    """Comparação de uma condição atômica de taxa: exata × estimador de horizonte."""

    name: str
    exact: float
    horizon: float
    margin: float
    agree: bool
    gated: bool


# (nome, quantificador, direção): taxas das razões ρ que decidem cada condição
HORIZON_CONDITIONS = (
    ("g_neg<1", SUP_K_IN_NEGATIVES, BACKWARD),
    ("g_neg>1", INF_K_IN_NEGATIVES, BACKWARD),
    ("g_pos>1", INF_K_IN_NATURALS, FORWARD),
    ("g_pos<1", SUP_K_IN_NATURALS, FORWARD),
    ("min>1", INF_ALL_K, FORWARD),
    ("max<1", SUP_ALL_K, FORWARD),
)


def horizon_checks(ms: MeasureSequence, n: int = 200, k_span: int = 500, gate: float = AGREEMENT_GATE) -> List[HorizonCheck]:
    """
    Reavalia cada condição de taxa com rate_horizon e compara o lado de 1.

    Só exige concordância quando a margem exata excede gate.

    Args:
        ms: Sequência de medidas
        n: Horizonte
        k_span: Raio de varredura
        gate: Margem mínima para exigir concordância

    Returns:
        Lista de HorizonCheck
    """
    checks = []
    for name, quantifier, direction in HORIZON_CONDITIONS:
        exact = rate_exact(ms.ratio, quantifier, direction)
        estimate = rate_horizon(ms.ratio, quantifier, direction, n, k_span)
        margin = _log_margin(exact)
        gated = margin > gate
        agree = (not gated) or (math.log(estimate) > 0) == (rate_sign(ms.ratio, quantifier, direction) > 0)
        checks.append(HorizonCheck(name, exact, estimate, margin, agree, gated))
    return checks


# ---------------------------------------------------------------------- auditoria

# (nome, premissas [(propriedade, status)], conclusão (propriedade, status))
IMPLICATIONS = (
    ("Hyperbolic ⇒ UE", [("Hyperbolic", HOLDS)], ("UE", HOLDS)),
    ("Hyperbolic ⇒ GH", [("Hyperbolic", HOLDS)], ("GeneralizedHyperbolic", HOLDS)),
    ("GH ⇒ Shadowing", [("GeneralizedHyperbolic", HOLDS)], ("Shadowing", HOLDS)),
    ("GH ⇒ SSS", [("GeneralizedHyperbolic", HOLDS)], ("SSS", HOLDS)),
    ("SSS ⇒ StructStable", [("SSS", HOLDS)], ("StructStable", HOLDS)),
    ("UE ⇒ E", [("UE", HOLDS)], ("E", HOLDS)),
    ("UPE ⇒ PE", [("UPE", HOLDS)], ("PE", HOLDS)),
    ("PE ⇒ E", [("PE", HOLDS)], ("E", HOLDS)),
    ("PE ∧ ¬Hyperbolic ⇒ ¬StructStable", [("PE", HOLDS), ("Hyperbolic", FAILS)], ("StructStable", FAILS)),
    ("E ∧ StructStable ⇒ UE", [("E", HOLDS), ("StructStable", HOLDS)], ("UE", HOLDS)),
    ("PE ∧ SSS ⇒ Shadowing", [("PE", HOLDS), ("SSS", HOLDS)], ("Shadowing", HOLDS)),
    ("PE ∧ ¬Shadowing ⇒ ¬SSS", [("PE", HOLDS), ("Shadowing", FAILS)], ("SSS", FAILS)),
    ("Shadowing ⇒ SSS", [("Shadowing", HOLDS)], ("SSS", HOLDS)),
)


def implication_audit(report: ClassificationReport) -> List[str]:
    """
    Lista de implicações violadas entre veredictos decididos.

    Lados Undecided (ou propriedades ausentes) são ignorados.

    Args:
        report: Relatório de classificação

    Returns:
        Lista de descrições das violações (vazia se coerente)
    """
    violations = []
    for name, premises, (prop, expected) in IMPLICATIONS:
        props = [q for q, _ in premises] + [prop]
        if any(q not in report.verdicts for q in props):
            continue
        if not all(report.status(q) == status for q, status in premises):
            continue
        actual = report.status(prop)
        if actual == UNDECIDED or actual == expected:
            continue
        detail = ", ".join(f"{q}={report.status(q)}" for q in props)
        violations.append(f"{name}: {detail}")
    return violations


def classify_atomic(system: AtomicSystem, horizon: int = 200, sample_budget: int = 64, seed: int = 0) -> ClassificationReport:
    """
    Relatório de um sistema atômico.

    PE, E, UPE e UE são decididos; as demais propriedades não têm regra exata
    para o modelo atômico e ficam Undecided.
    """
    verdicts = {
        "PE": classify_atomic_expansive(system, POSITIVE),
        "E": classify_atomic_expansive(system, TWOSIDED),
        "UPE": classify_atomic_uniform(system, POSITIVE, horizon, sample_budget, seed),
        "UE": classify_atomic_uniform(system, TWOSIDED, horizon, sample_budget, seed),
    }
    for prop in PROPERTIES:
        if prop not in ATOMIC_PROPERTIES:
            verdicts[prop] = Verdict(UNDECIDED, EXACT, "OpenProblem", None, None, "sem regra exata para sistemas atômicos")
    return ClassificationReport(
        label=system.label,
        kind="atomic",
        fingerprint=fingerprint(system),
        side_rates=(math.nan, math.nan),
        verdicts=verdicts,
        p=system.p,
    )
