#!/usr/bin/env python3
"""
Módulo de configuração - leitura de arquivos JSON de sistemas e emissão da configuração reduzida
"""

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Optional, Union

from ..utils.validators import (
    ConfigError,
    locate,
    parse_number,
    parse_positive,
    parse_positive_list,
    require,
    validate_choice,
    validate_p,
)

from .sequences import EventuallyPeriodicSequence
from .systems import (
    AtomicSystem,
    Cells,
    Cycle,
    DissipativeSystem,
    InvalidSystemError,
    Line,
    MeasureSequence,
    WeightSequence,
)

logger = logging.getLogger(__name__)

KINDS = ("dissipative", "atomic", "shift")

System = Union[DissipativeSystem, AtomicSystem, WeightSequence]


@dataclass
class SystemConfig:
    """Configuração JSON validada, com o texto original para localizar linhas."""

    kind: str
    label: str
    p: float
    data: Dict[str, Any]
    text: str = field(default="", repr=False)
    source: str = "<config>"

    def line(self, *keys: str) -> Optional[int]:
        return locate(self.text, *keys)

    def build(self) -> System:
        return build_system(self)


def parse_config(text: str, source: str = "<config>") -> SystemConfig:
    """
    Interpreta o texto JSON de uma configuração de sistema.

    Args:
        text: Conteúdo JSON
        source: Nome do arquivo (para mensagens)

    Returns:
        SystemConfig (ainda não construída)

    Raises:
        ConfigError: JSON inválido ou campos de topo ausentes
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"JSON inválido: {exc.msg}", exc.lineno)
    if not isinstance(data, dict):
        raise ConfigError("a configuração deve ser um objeto JSON", 1)
    kind = validate_choice(require(data, "kind", source, 1), KINDS, "kind", locate(text, "kind"))
    p = validate_p(data.get("p", 1), locate(text, "p"))
    label = str(data.get("label", ""))
    return SystemConfig(kind, label, p, data, text, source)


def load_config(path: str) -> SystemConfig:
    """Lê e interpreta um arquivo de configuração."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigError(f"não foi possível ler {path}: {exc.strerror}")
    logger.debug("configuração lida de %s", path)
    return parse_config(text, path)


def _sequence(cfg: SystemConfig, node: Any, *path: str) -> EventuallyPeriodicSequence:
    line = cfg.line(*path)
    name = ".".join(path)
    require(node, "core", name, line)
    core_lo = node.get("core_lo", 0)
    if isinstance(core_lo, bool) or not isinstance(core_lo, int):
        raise ConfigError(f"{name}.core_lo: esperado inteiro", cfg.line(*path, "core_lo"))
    parts = {}
    for key in ("core", "neg_period", "pos_period"):
        values = require(node, key, name, line)
        parts[key] = parse_positive_list(values, f"{name}.{key}", cfg.line(*path, key))
    return EventuallyPeriodicSequence(core_lo, tuple(parts["core"]), tuple(parts["neg_period"]), tuple(parts["pos_period"]), name=cfg.label)


def _cells(cfg: SystemConfig, node: Any):
    line = cfg.line("cells")
    beta = parse_positive_list(require(node, "beta", "cells", line), "cells.beta", cfg.line("cells", "beta"))
    wobble_table = node.get("wobble", {})
    if not isinstance(wobble_table, dict):
        raise ConfigError("cells.wobble: esperado objeto {k: [θ...]}", cfg.line("cells", "wobble"))
    wobble = {}
    for key, row in wobble_table.items():
        row_line = cfg.line("cells", "wobble", key)
        try:
            k = int(key)
        except ValueError:
            raise ConfigError(f"cells.wobble: índice {key!r} não é inteiro", row_line)
        wobble[k] = tuple(float(v) for v in parse_positive_list(row, f"cells.wobble[{key}]", row_line))
    K = float(parse_number(node.get("K", 1), "cells.K", cfg.line("cells", "K")))
    return Cells(tuple(float(b) for b in beta), wobble), K


def _component(cfg: SystemConfig, node: Any, index: int):
    line = cfg.line("components")
    kind = validate_choice(require(node, "type", f"components[{index}]", line), ("cycle", "line"), f"components[{index}].type", line)
    if kind == "cycle":
        measures = parse_positive_list(require(node, "measures", f"components[{index}]", line), f"components[{index}].measures", line)
        return Cycle(tuple(measures))
    mu0 = parse_positive(node.get("mu0", 1), f"components[{index}].mu0", line)
    ratio = _sequence(cfg, require(node, "ratio", f"components[{index}]", line), "components", "ratio")
    return Line(MeasureSequence(mu0, ratio))


def build_system(cfg: SystemConfig) -> System:
    """
    Constrói o objeto de sistema descrito pela configuração.

    Args:
        cfg: Configuração interpretada

    Returns:
        DissipativeSystem, AtomicSystem ou WeightSequence

    Raises:
        ConfigError: campo inválido ou invariante de construção violado
    """
    data = cfg.data
    try:
        if cfg.kind == "shift":
            weights = _sequence(cfg, require(data, "weights", cfg.source, 1), "weights")
            return WeightSequence(weights, p=cfg.p, label=cfg.label)
        if cfg.kind == "atomic":
            specs = require(data, "components", cfg.source, 1)
            if not isinstance(specs, list) or not specs:
                raise ConfigError("components: esperado lista não vazia", cfg.line("components"))
            comps = tuple(_component(cfg, spec, i) for i, spec in enumerate(specs))
            return AtomicSystem(comps, p=cfg.p, label=cfg.label)
        ratio = _sequence(cfg, require(data, "ratio", cfg.source, 1), "ratio")
        mu0 = parse_positive(data.get("mu0", 1), "mu0", cfg.line("mu0"))
        cells, K = (None, 1.0)
        if "cells" in data:
            cells, K = _cells(cfg, data["cells"])
        return DissipativeSystem(cfg.p, MeasureSequence(mu0, ratio), cells, K, cfg.label)
    except (InvalidSystemError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        key = "cells" if "célula" in str(exc) or "Σ" in str(exc) or "θ" in str(exc) else cfg.kind
        raise ConfigError(str(exc), cfg.line(key) or 1) from exc


def _serial(value) -> Any:
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    return float(value)


def sequence_to_config(seq: EventuallyPeriodicSequence) -> Dict[str, Any]:
    return {
        "core_lo": seq.core_lo,
        "core": [_serial(v) for v in seq.core],
        "neg_period": [_serial(v) for v in seq.neg_period],
        "pos_period": [_serial(v) for v in seq.pos_period],
    }


def to_config(system: System) -> Dict[str, Any]:
    """
    Configuração JSON equivalente ao sistema (inversa de build_system).

    Args:
        system: WeightSequence ou DissipativeSystem sem células

    Returns:
        Dicionário serializável
    """
    if isinstance(system, WeightSequence):
        return {"kind": "shift", "label": system.label, "p": system.p, "weights": sequence_to_config(system.weights)}
    if isinstance(system, DissipativeSystem):
        out = {
            "kind": "dissipative",
            "label": system.label,
            "p": system.p,
            "mu0": _serial(system.measures.mu0),
            "ratio": sequence_to_config(system.measures.ratio),
        }
        if system.cells is not None:
            out["cells"] = {
                "beta": list(system.cells.beta),
                "wobble": {str(k): list(v) for k, v in sorted(system.cells.wobble.items())},
                "K": system.K,
            }
        return out
    raise TypeError(f"sem serialização de configuração para {type(system).__name__}")
