"""Solve command for padicwalk CLI."""

import logging

import click

from ...spectral import solve_cauchy
from ..utils import (
    ResultTable,
    config_option,
    display_summary,
    emit,
    format_value,
    handle_errors,
    output_options,
    parse_times,
)
from ._shared import load_run

logger = logging.getLogger(__name__)


@click.command()
@config_option
@click.option('--times', default=None, help='Comma-separated times (config value by default)')
@click.option('--sign', type=click.Choice(['+', '-']), default=None, help='Basis root sign')
@output_options
def solve(config_path: str, times: str, sign: str, out: str, fmt: str):
    """Solve df/dt = W_m f from the configured initial condition."""
    with handle_errors("solve"):
        config, meta = load_run(config_path, "solve")
        tree = config.build_tree()
        kernel = config.build_kernel()
        f0 = config.build_initial(tree)
        times = parse_times(times) or config.times

        solutions = solve_cauchy(tree, kernel, f0, times, sign=sign or config.sign)

        table = ResultTable(["leaf"] + [f"t={format_value(t)}" for t in times])
        for i, path in enumerate(tree.leaf_paths()):
            table.add_row(path, *[float(f.values[i]) for f in solutions])
        emit(table, meta, fmt, out)

        display_summary("Cauchy solution", {
            "leaves": tree.leaf_count,
            "times": len(times),
            "initial mass": f0.integral(),
            "final mass": solutions[-1].integral() if solutions else 0.0,
        })
