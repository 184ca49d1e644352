#!/usr/bin/env python3
"""
Módulo de validação - erros de configuração com número de linha e conversão de valores
"""

import math
import re
from fractions import Fraction
from typing import Any, Dict, List, Optional, Union

Number = Union[Fraction, float]

RATIONAL_PATTERN = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


class ConfigError(Exception):
    """
    Configuração rejeitada.

    Args:
        message: Descrição do problema (nomeia o invariante violado)
        line: Linha (1-based) do campo problemático no arquivo, se conhecida
    """

    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(message)
        self.message = message
        self.line = line

    def __str__(self) -> str:
        if self.line is None:
            return self.message
        return f"linha {self.line}: {self.message}"


def locate(text: str, *keys: str) -> Optional[int]:
    """
    Linha da chave JSON `"keys[-1]"`, procurando cada chave depois da anterior.

    Args:
        text: Conteúdo do arquivo
        keys: Caminho de chaves (ex.: "cells", "beta")

    Returns:
        Número da linha (1-based) ou None se não encontrada
    """
    pos = 0
    found = None
    for key in keys:
        match = re.compile(r'"' + re.escape(str(key)) + r'"\s*:').search(text, pos)
        if match is None:
            return found
        pos = match.start()
        found = text.count("\n", 0, pos) + 1
    return found


def parse_number(value: Any, name: str, line: Optional[int] = None) -> Number:
    """
    Converte número JSON ou string racional "a/b" em Fraction (exato) ou float.

    Inteiros viram Fraction; floats permanecem floats.
    """
    if isinstance(value, bool):
        raise ConfigError(f"{name}: booleano não é um número", line)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ConfigError(f"{name}: valor não finito", line)
        return value
    if isinstance(value, str) and RATIONAL_PATTERN.match(value):
        try:
            return Fraction(value.replace(" ", ""))
        except ZeroDivisionError:
            raise ConfigError(f"{name}: denominador zero em {value!r}", line)
    raise ConfigError(f"{name}: esperado número ou racional 'a/b', recebido {value!r}", line)


def parse_positive(value: Any, name: str, line: Optional[int] = None) -> Number:
    number = parse_number(value, name, line)
    if not number > 0:
        raise ConfigError(f"{name}: deve ser positivo, recebido {value!r}", line)
    return number


def parse_positive_list(values: Any, name: str, line: Optional[int] = None, allow_empty: bool = False) -> List[Number]:
    if not isinstance(values, list):
        raise ConfigError(f"{name}: esperado lista", line)
    if not values and not allow_empty:
        raise ConfigError(f"{name}: lista vazia", line)
    return [parse_positive(v, f"{name}[{i}]", line) for i, v in enumerate(values)]


def require(mapping: Dict[str, Any], key: str, context: str, line: Optional[int] = None) -> Any:
    """Retorna mapping[key] ou levanta ConfigError nomeando a chave ausente."""
    if not isinstance(mapping, dict):
        raise ConfigError(f"{context}: esperado objeto JSON", line)
    if key not in mapping:
        raise ConfigError(f"{context}: campo obrigatório '{key}' ausente", line)
    return mapping[key]


def validate_p(value: Any, line: Optional[int] = None) -> float:
    p = float(parse_number(value, "p", line))
    if p < 1:
        raise ConfigError(f"p deve ser ≥ 1, recebido {value!r}", line)
    return p


def validate_choice(value: Any, choices, name: str, line: Optional[int] = None) -> str:
    if value not in choices:
        raise ConfigError(f"{name}: esperado um de {sorted(choices)}, recebido {value!r}", line)
    return value
