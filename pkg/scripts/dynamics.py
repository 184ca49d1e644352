#!/usr/bin/env python3
"""
Classificador de Dinâmica Linear - ponto de entrada da linha de comando

Uso:
    python3 scripts/dynamics.py classify configs/valley.json
    python3 scripts/dynamics.py simulate configs/contracting.json --vector 0 --range 0:10
    python3 scripts/dynamics.py shadow configs/shift_double.json --delta 1e-3 --length 201 --seed 1
    python3 scripts/dynamics.py reduce configs/contracting.json
    python3 scripts/dynamics.py audit --count 200 --seed 7
"""

import os
import sys

# Adicionar diretório raiz ao path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.ui.cli import main


if __name__ == "__main__":
    sys.exit(main())
