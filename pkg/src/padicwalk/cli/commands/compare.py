"""Compare command for padicwalk CLI."""

import logging
import sys

import click
import numpy as np

from ...oracle import (
    JumpProcessConfig,
    build_generator,
    expm_apply,
    simulate,
    total_variation,
    transition_distribution,
)
from ...spectral import PiecewiseFunction, enumerate_basis, gram_residual, modal_expansion, solve_cauchy
from ..config import (
    EXIT_ACCEPTANCE_BREACH,
    GRAM_TOLERANCE,
    MAX_LEAVES,
    MONTE_CARLO_SIGMAS,
    SPECTRAL_ORACLE_TOLERANCE,
)
from ..utils import (
    ResultTable,
    config_option,
    emit,
    err_console,
    format_value,
    handle_errors,
    output_options,
    parse_times,
)
from ._shared import load_run

logger = logging.getLogger(__name__)


def _spectrum_gap(spectral: np.ndarray, dense: np.ndarray) -> float:
    """Largest gap between the sorted spectra, relative to the spectral radius."""
    if spectral.size != dense.size:
        return float("inf")
    scale = max(1.0, float(np.max(np.abs(dense))) if dense.size else 1.0)
    return float(np.max(np.abs(np.sort(spectral) - np.sort(dense)))) / scale


@click.command()
@config_option
@click.option('--times', default=None, help='Comma-separated times (config value by default)')
@click.option('--seed', type=click.IntRange(0, 2 ** 64 - 1), default=None, help='Master seed (u64)')
@click.option('--paths', type=click.IntRange(min=1), default=None, help='Monte-Carlo path count')
@click.option('--sign', type=click.Choice(['+', '-']), default=None, help='Basis root sign')
@click.option('--no-monte-carlo', is_flag=True, help='Skip the jump-process check')
@output_options
def compare(config_path: str, times: str, seed: int, paths: int, sign: str,
            no_monte_carlo: bool, out: str, fmt: str):
    """Spectral solution against the matrix-exponential and Monte-Carlo oracles."""
    with handle_errors("compare"):
        config, meta = load_run(config_path, "compare")
        tree = config.build_tree()
        kernel = config.build_kernel()
        generator = build_generator(tree, kernel, max_leaves=MAX_LEAVES)
        times = parse_times(times) or config.times
        sign = sign or config.sign
        start = config.initial_leaf_index(tree)

        if config.initial is not None:
            f0 = config.build_initial(tree)
        else:
            f0 = PiecewiseFunction.indicator(tree, tree.leaves()[start])

        table = ResultTable(["check", "value", "threshold", "status"])

        def record(name: str, value: float, threshold: float) -> None:
            table.add_row(name, value, threshold, "pass" if value <= threshold else "fail")

        spectral = solve_cauchy(tree, kernel, f0, times, sign=sign)
        dense = expm_apply(generator, f0, times)
        for t, a, b in zip(times, spectral, dense):
            record(f"solution t={format_value(t)}", a.max_abs_diff(b), SPECTRAL_ORACLE_TOLERANCE)

        basis = enumerate_basis(tree, sign=sign)
        record("gram residual", gram_residual(tree, basis), GRAM_TOLERANCE)
        expansion = modal_expansion(tree, kernel, f0, basis=basis)
        record("spectrum", _spectrum_gap(expansion.eigenvalues, generator.spectrum()), SPECTRAL_ORACLE_TOLERANCE)

        if not no_monte_carlo:
            seed = config.seed if seed is None else seed
            meta.seed = seed
            cfg = JumpProcessConfig(start, config.horizon, paths or config.paths, seed)
            histogram = simulate(cfg, tree, kernel, max_leaves=MAX_LEAVES)
            exact = transition_distribution(generator, start, config.horizon)
            record(
                "monte carlo total variation",
                total_variation(histogram.probabilities, exact),
                MONTE_CARLO_SIGMAS * histogram.tv_bound(exact),
            )

        emit(table, meta, fmt, out)

        failures = [row[0] for row in table.rows if row[3] == "fail"]
        if failures:
            err_console.print(f"[red]Acceptance breach: {', '.join(failures)}[/red]")
            sys.exit(EXIT_ACCEPTANCE_BREACH)
        err_console.print(f"[green]✓ All {len(table.rows)} checks passed[/green]")
