"""Spectrum command for padicwalk CLI."""

import logging

import click

from ...padic import format_path
from ...spectral import enumerate_eigenpairs
from ..utils import ResultTable, display_summary, emit, handle_errors, output_options, config_option
from ._shared import load_run

logger = logging.getLogger(__name__)


@click.command()
@config_option
@output_options
def spectrum(config_path: str, out: str, fmt: str):
    """Export every eigenpair (gamma, n, a, lambda) of the measure-weighted operator."""
    with handle_errors("spectrum"):
        config, meta = load_run(config_path, "spectrum")
        tree = config.build_tree()
        kernel = config.build_kernel()
        pairs = enumerate_eigenpairs(tree, kernel)

        table = ResultTable(["gamma", "n", "a", "sub_ball_measure", "lambda"])
        for pair in pairs:
            index = pair.index
            table.add_row(
                index.gamma,
                format_path(tree.base, index.parent.path),
                index.a,
                str(tree.node_measure(index.sub_ball)),
                pair.eigenvalue,
            )
        emit(table, meta, fmt, out)
        display_summary("Spectrum", {
            "eigenpairs": len(pairs),
            "distinct eigenvalues": len({pair.eigenvalue for pair in pairs}),
            "support leaves": len(tree.support_leaves()),
        })
