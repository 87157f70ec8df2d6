"""Radial jump-rate kernels W(|x - y|_p)."""

from .base import (
    RateProfile,
    VANISHING_TAIL,
    vladimirov_profile,
    table_profile,
)
from .registry import (
    KernelRegistry,
    build_profile,
    get_registry,
    register_kernel,
    register_defaults,
)

__all__ = [
    'RateProfile',
    'VANISHING_TAIL',
    'vladimirov_profile',
    'table_profile',
    'KernelRegistry',
    'build_profile',
    'get_registry',
    'register_kernel',
    'register_defaults',
]
