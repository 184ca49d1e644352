"""Módulo de utilitários"""

from .formatters import canonical_json, csv_rows, format_float
from .validators import ConfigError

__all__ = ['canonical_json', 'csv_rows', 'format_float', 'ConfigError']
