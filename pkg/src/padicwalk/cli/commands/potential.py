"""Potential command for padicwalk CLI."""

import logging

import click

from ...kolmogorov import generator_identity_residual, reduce_potential
from ...oracle import check_scale
from ..config import MAX_LEAVES, POTENTIAL_IDENTITY_TOLERANCE
from ..utils import ResultTable, config_option, display_summary, emit, err_console, handle_errors, output_options
from ._shared import load_run

logger = logging.getLogger(__name__)


@click.command()
@config_option
@output_options
def potential(config_path: str, out: str, fmt: str):
    """Reduce the equation with potential U and check the generator identity."""
    with handle_errors("potential"):
        config, meta = load_run(config_path, "potential")
        tree = config.build_tree()
        kernel = config.build_kernel()
        check_scale(tree, MAX_LEAVES)
        U = config.build_potential(tree)

        reduction = reduce_potential(tree, kernel, U)
        residual = generator_identity_residual(tree, kernel, U)

        table = ResultTable(
            ["leaf", "U", "weighted_density", "reaction"],
            extra={"identity_residual": residual},
        )
        densities = reduction.weighted_measure.densities
        for i, path in enumerate(tree.leaf_paths()):
            table.add_row(path, str(U.values[i]), str(densities[i]), float(reduction.reaction.values[i]))
        emit(table, meta, fmt, out)

        display_summary("Potential reduction", {
            "leaves": tree.leaf_count,
            "identity residual": residual,
        })
        if residual > POTENTIAL_IDENTITY_TOLERANCE:
            err_console.print(
                f"[yellow]Identity residual {residual:.3e} exceeds {POTENTIAL_IDENTITY_TOLERANCE:.0e}[/yellow]"
            )
