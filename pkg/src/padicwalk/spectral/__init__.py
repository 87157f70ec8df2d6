"""Eigenfunctions, orthonormal basis and Cauchy solutions for W_m."""

from .functions import PiecewiseFunction
from .operator import apply_operator, absorption_rates, shell_sums, check_compatible
from .eigen import (
    EigenfunctionIndex,
    Eigenpair,
    eigenvalue,
    eigenfunction_f,
    intermediate_g,
    inner_product_f,
    admissible_indices,
    enumerate_eigenpairs,
    eigen_residual,
)
from .basis import (
    BasisElement,
    IndicatorExpansion,
    reference_digit,
    root_k,
    basis_element,
    constant_element,
    enumerate_basis,
    basis_matrix,
    gram_matrix,
    gram_residual,
    expand_indicator,
)
from .cauchy import (
    ModalExpansion,
    modal_expansion,
    solve_cauchy,
    indicator_chain_solution,
    check_times,
)

__all__ = [
    'PiecewiseFunction',
    'apply_operator',
    'absorption_rates',
    'shell_sums',
    'check_compatible',
    'EigenfunctionIndex',
    'Eigenpair',
    'eigenvalue',
    'eigenfunction_f',
    'intermediate_g',
    'inner_product_f',
    'admissible_indices',
    'enumerate_eigenpairs',
    'eigen_residual',
    'BasisElement',
    'IndicatorExpansion',
    'reference_digit',
    'root_k',
    'basis_element',
    'constant_element',
    'enumerate_basis',
    'basis_matrix',
    'gram_matrix',
    'gram_residual',
    'expand_indicator',
    'ModalExpansion',
    'modal_expansion',
    'solve_cauchy',
    'indicator_chain_solution',
    'check_times',
]
