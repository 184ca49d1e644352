#!/usr/bin/env python3
"""
Módulo de formatação de dados - números com 12 dígitos, JSON canônico, CSV
"""

import csv
import io
import json
import math
from fractions import Fraction
from typing import Any, Iterable, Sequence

SIGNIFICANT_DIGITS = 12


def format_float(value: float) -> str:
    """
    Formata um número real com 12 dígitos significativos.

    Args:
        value: Número (float, int ou Fraction)

    Returns:
        String estável (ex: "0.5", "1.41421356237", "inf")
    """
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    text = f"{value:.{SIGNIFICANT_DIGITS}g}"
    return "0" if text == "-0" else text


def format_margin(value) -> str:
    return "-" if value is None else format_float(value)


def canonical(obj: Any) -> Any:
    """Converte recursivamente para tipos JSON com floats arredondados a 12 dígitos."""
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, (float, Fraction)):
        value = float(obj)
        if not math.isfinite(value):
            return format_float(value)
        return float(format_float(value))
    if hasattr(obj, "item"):
        return canonical(obj.item())
    return str(obj)


def canonical_json(obj: Any) -> str:
    """
    Serialização canônica: chaves ordenadas, floats com 12 dígitos, separadores fixos.

    Args:
        obj: Estrutura a serializar

    Returns:
        Texto JSON byte a byte estável para entradas iguais
    """
    return json.dumps(canonical(obj), sort_keys=True, indent=2, ensure_ascii=False)


def csv_rows(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Tabela CSV com floats formatados por format_float."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_float(v) if isinstance(v, float) else v for v in row])
    return buffer.getvalue()
