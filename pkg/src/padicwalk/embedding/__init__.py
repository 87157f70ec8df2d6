"""Finite ultrametric spaces and their isometric embedding into Q_p."""

from .space import (
    Violation,
    FiniteUltrametricSpace,
    validate_ultrametric,
    merge_heights,
    load_distance_csv,
    parse_dendrogram,
)
from .embedder import EmbeddingResult, embed, to_measure_tree, embedded_distances

__all__ = [
    'Violation',
    'FiniteUltrametricSpace',
    'validate_ultrametric',
    'merge_heights',
    'load_distance_csv',
    'parse_dendrogram',
    'EmbeddingResult',
    'embed',
    'to_measure_tree',
    'embedded_distances',
]
