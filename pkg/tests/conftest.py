"""
Configuração dos testes - caminho do repositório e sistemas canônicos
"""

import os
import sys
from fractions import Fraction

import pytest

# Adicionar diretório raiz ao path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.core.sequences import EventuallyPeriodicSequence
from src.core.systems import DissipativeSystem, MeasureSequence

HALF = Fraction(1, 2)
TWO = Fraction(2)
ONE = Fraction(1)

CONFIG_DIR = os.path.join(os.path.dirname(__file__), '..', 'configs')

# nome: (núcleo em k = 0, período negativo, período positivo) das razões ρ_k = μ_{k+1}/μ_k
CANONICAL_RATIOS = {
    "contracting": (HALF, HALF, HALF),   # μ_k = 2^{-k}
    "expanding": (TWO, TWO, TWO),        # μ_k = 2^{k}
    "valley": (HALF, TWO, HALF),         # μ_k = 2^{-|k|}
    "peak": (TWO, HALF, TWO),            # μ_k = 2^{|k|}
    "flat": (ONE, ONE, ONE),             # μ ≡ 1
    "half_flat": (HALF, ONE, HALF),      # μ_k = 1 (k ≤ 0), 2^{-k} (k > 0)
}


def dissipative(core, neg, pos, p=1.0, label="", core_lo=0):
    """Sistema dissipativo sem células com μ_0 = 1."""
    core = core if isinstance(core, (list, tuple)) else (core,)
    neg = neg if isinstance(neg, (list, tuple)) else (neg,)
    pos = pos if isinstance(pos, (list, tuple)) else (pos,)
    ratio = EventuallyPeriodicSequence(core_lo, tuple(core), tuple(neg), tuple(pos))
    return DissipativeSystem(p, MeasureSequence(1, ratio), label=label)


def canonical(name, p=1.0):
    core, neg, pos = CANONICAL_RATIOS[name]
    return dissipative(core, neg, pos, p=p, label=name)


def config_path(name):
    return os.path.join(CONFIG_DIR, f"{name}.json")


@pytest.fixture(params=sorted(CANONICAL_RATIOS))
def canonical_name(request):
    return request.param


@pytest.fixture
def canonical_systems():
    return {name: canonical(name) for name in CANONICAL_RATIOS}
