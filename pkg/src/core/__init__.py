"""Módulo core - sequências, sistemas, classificação e simulação"""

from .classify import ClassificationReport, Verdict, classify_atomic, classify_dissipative, classify_shift_report
from .sequences import EventuallyPeriodicSequence
from .systems import AtomicSystem, DissipativeSystem, MeasureSequence, WeightSequence

__all__ = [
    'ClassificationReport', 'Verdict', 'classify_atomic', 'classify_dissipative', 'classify_shift_report',
    'EventuallyPeriodicSequence', 'AtomicSystem', 'DissipativeSystem', 'MeasureSequence', 'WeightSequence',
]
