"""Simulate command for padicwalk CLI."""

import logging

import click

from ...oracle import JumpProcessConfig, simulate as simulate_walk
from ..config import MAX_LEAVES
from ..utils import ResultTable, config_option, display_summary, emit, handle_errors, output_options
from ._shared import load_run

logger = logging.getLogger(__name__)


@click.command()
@config_option
@click.option('--seed', type=click.IntRange(0, 2 ** 64 - 1), default=None, help='Master seed (u64)')
@click.option('--paths', type=click.IntRange(min=1), default=None, help='Number of simulated paths')
@output_options
def simulate(config_path: str, seed: int, paths: int, out: str, fmt: str):
    """Monte-Carlo occupancy histogram of the jump process at the horizon."""
    with handle_errors("simulate"):
        config, meta = load_run(config_path, "simulate")
        seed = config.seed if seed is None else seed
        meta.seed = seed
        tree = config.build_tree()
        kernel = config.build_kernel()

        cfg = JumpProcessConfig(
            initial_leaf=config.initial_leaf_index(tree),
            horizon=config.horizon,
            paths=paths or config.paths,
            seed=seed,
        )
        histogram = simulate_walk(cfg, tree, kernel, max_leaves=MAX_LEAVES)

        table = ResultTable(
            ["leaf", "probability", "standard_error"],
            extra={"paths": cfg.paths, "horizon": cfg.horizon, "absorbing": histogram.absorbing},
        )
        errors = histogram.standard_errors
        for i, path in enumerate(histogram.leaf_paths):
            table.add_row(path, float(histogram.probabilities[i]), float(errors[i]))
        emit(table, meta, fmt, out)

        display_summary("Simulation", {
            "paths": cfg.paths,
            "horizon": cfg.horizon,
            "seed": seed,
            "TV error bound": histogram.tv_bound(),
        })
