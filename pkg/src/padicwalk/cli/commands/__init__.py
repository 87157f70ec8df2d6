"""CLI commands for padicwalk."""

# Import commands to make them available
from . import embed, spectrum, basis, solve, simulate, compare, potential, growth

__all__ = ['embed', 'spectrum', 'basis', 'solve', 'simulate', 'compare', 'potential', 'growth']
