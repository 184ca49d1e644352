#!/usr/bin/env python3
"""
Módulo de funções de terminal - cores e impressão
"""

import re
import sys


class Colors:
    """Cores ANSI para terminal"""
    RESET = '\033[0m'
    BOLD = '\033[1m'
    DIM = '\033[2m'

    RED = '\033[31m'
    GREEN = '\033[32m'
    YELLOW = '\033[33m'
    CYAN = '\033[36m'

    BRIGHT_RED = '\033[91m'
    BRIGHT_GREEN = '\033[92m'
    BRIGHT_YELLOW = '\033[93m'
    BRIGHT_CYAN = '\033[96m'


ANSI_ESCAPE = re.compile(r'\x1B(?:[@-Z\\-_]|\[[0-?]*[ -/]*[@-~])')

STATUS_COLORS = {
    "Holds": Colors.BRIGHT_GREEN,
    "Fails": Colors.BRIGHT_RED,
    "Undecided": Colors.BRIGHT_YELLOW,
}


def use_color(stream=None) -> bool:
    """Cores só quando a saída é um terminal."""
    stream = stream or sys.stdout
    return hasattr(stream, "isatty") and stream.isatty()


def paint(text: str, color: str, enabled: bool) -> str:
    return f"{color}{text}{Colors.RESET}" if enabled else text


def strip_ansi(text: str) -> str:
    """Remove códigos ANSI de uma string"""
    return ANSI_ESCAPE.sub('', text)


def print_flush(text: str = "", stream=None):
    """Imprime e descarrega imediatamente"""
    print(text, file=stream or sys.stdout, flush=True)
