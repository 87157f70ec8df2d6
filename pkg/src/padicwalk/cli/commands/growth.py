"""Growth command for padicwalk CLI."""

import logging

import click

from ...measures import check_growth_condition
from ..config import DEFAULT_BETA, DEFAULT_GROWTH_HORIZON
from ..utils import ResultTable, config_option, display_summary, emit, handle_errors, output_options
from ._shared import load_run

logger = logging.getLogger(__name__)


@click.command()
@config_option
@click.option('--beta', type=float, default=None, help='Exponent beta > 1 (config value by default)')
@click.option('--horizon', type=click.IntRange(min=4), default=None, help='Number of sampled levels')
@output_options
def growth(config_path: str, beta: float, horizon: int, out: str, fmt: str):
    """Diagnose i^beta / V_i -> 0 for the declared tail of the measure."""
    with handle_errors("growth"):
        config, meta = load_run(config_path, "growth")
        tree = config.build_tree()
        tail = config.build_tail(tree)
        spec = config.tail
        beta = beta or (spec.beta if spec else DEFAULT_BETA)
        horizon = horizon or (spec.horizon if spec else DEFAULT_GROWTH_HORIZON)

        report = check_growth_condition(tail, beta, horizon)

        table = ResultTable(
            ["level", "log10_ratio"],
            extra={"tail": report.tail, "beta": report.beta, "verdict": report.verdict, "slope": report.slope},
        )
        for level, ratio in zip(report.levels, report.log10_ratios):
            table.add_row(level, ratio)
        emit(table, meta, fmt, out)
        display_summary("Growth condition", {
            "tail": report.tail,
            "beta": report.beta,
            "slope": report.slope,
            "verdict": report.verdict,
        })
