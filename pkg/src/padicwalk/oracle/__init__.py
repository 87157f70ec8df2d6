"""Dense-matrix and Monte-Carlo ground truth for W_m."""

from .generator import (
    MAX_DENSE_LEAVES,
    DenseGenerator,
    check_scale,
    lca_levels,
    kernel_matrix,
    generator_from_weights,
    build_generator,
    expm_apply,
    transition_distribution,
    total_variation,
)
from .jump import (
    JumpProcessConfig,
    OccupancyHistogram,
    rate_matrix,
    simulate,
)

__all__ = [
    'MAX_DENSE_LEAVES',
    'DenseGenerator',
    'check_scale',
    'lca_levels',
    'kernel_matrix',
    'generator_from_weights',
    'build_generator',
    'expm_apply',
    'transition_distribution',
    'total_variation',
    'JumpProcessConfig',
    'OccupancyHistogram',
    'rate_matrix',
    'simulate',
]
