"""Módulo de interface do usuário"""

from .terminal import Colors, paint, print_flush, strip_ansi

__all__ = ['Colors', 'paint', 'print_flush', 'strip_ansi']
