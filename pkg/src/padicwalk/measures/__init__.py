"""Measures m(x) d_p x on a resolution window and their ball measures."""

from .tree import MeasureTree
from .growth import (
    TailModel,
    ConstantTail,
    HaarTail,
    PowerTail,
    GrowthReport,
    check_growth_condition,
    SATISFIED,
    VIOLATED,
    INCONCLUSIVE,
)
from .generators import uniform_ball, random_measure

__all__ = [
    'MeasureTree',
    'TailModel',
    'ConstantTail',
    'HaarTail',
    'PowerTail',
    'GrowthReport',
    'check_growth_condition',
    'SATISFIED',
    'VIOLATED',
    'INCONCLUSIVE',
    'uniform_ball',
    'random_measure',
]
