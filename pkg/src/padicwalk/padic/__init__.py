"""Exact p-adic values, balls and digit paths."""

from .base import Base, PAdicApprox, Window, BallAddress
from .arithmetic import (
    from_fraction,
    to_fraction,
    norm,
    distance,
    split_parts,
    add_disjoint,
    scale_by_power,
    root_ball,
    in_root_ball,
    ball_of,
    parent,
    children,
    ancestor,
    contains,
    center,
    format_path,
    parse_path,
    ball_from_path,
)

__all__ = [
    'Base',
    'PAdicApprox',
    'Window',
    'BallAddress',
    'from_fraction',
    'to_fraction',
    'norm',
    'distance',
    'split_parts',
    'add_disjoint',
    'scale_by_power',
    'root_ball',
    'in_root_ball',
    'ball_of',
    'parent',
    'children',
    'ancestor',
    'contains',
    'center',
    'format_path',
    'parse_path',
    'ball_from_path',
]
