"""Support/complement splitting and reduction of the equation with potential."""

from .splitting import (
    SplitSolution,
    restrict_to_support,
    split,
    absorption_rates,
    mode_integral,
    evolve_complement,
)
from .potential import (
    PotentialReduction,
    reaction_term,
    reduce_potential,
    assemble_potential_generator,
    reduced_generator,
    generator_identity_residual,
)

__all__ = [
    'SplitSolution',
    'restrict_to_support',
    'split',
    'absorption_rates',
    'mode_integral',
    'evolve_complement',
    'PotentialReduction',
    'reaction_term',
    'reduce_potential',
    'assemble_potential_generator',
    'reduced_generator',
    'generator_identity_residual',
]
