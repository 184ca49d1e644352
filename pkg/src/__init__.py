"""Classificador de Dinâmica Linear - Módulo principal"""

__version__ = "1.0.0"
