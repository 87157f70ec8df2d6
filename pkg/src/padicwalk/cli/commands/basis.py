"""Basis-check command for padicwalk CLI."""

import logging

import click

from ...padic import format_path
from ...spectral import eigenvalue, enumerate_basis, gram_residual
from ..config import GRAM_TOLERANCE
from ..utils import ResultTable, config_option, display_summary, emit, err_console, handle_errors, output_options
from ._shared import load_run

logger = logging.getLogger(__name__)


@click.command('basis-check')
@config_option
@click.option('--sign', type=click.Choice(['+', '-']), default=None,
              help='Root k = -1 ± sqrt(V_P / V_ref) (config value by default)')
@output_options
def basis_check(config_path: str, sign: str, out: str, fmt: str):
    """Build the orthonormal basis, export it and report the Gram residual."""
    with handle_errors("basis-check"):
        config, meta = load_run(config_path, "basis-check")
        tree = config.build_tree()
        kernel = config.build_kernel()
        sign = sign or config.sign

        elements = enumerate_basis(tree, sign=sign)
        residual = gram_residual(tree, elements)

        leaf_columns = [f"leaf_{path}" for path in tree.leaf_paths()]
        table = ResultTable(
            ["gamma", "n", "b", "k", "lambda"] + leaf_columns,
            extra={"gram_residual": residual, "elements": len(elements), "sign": sign},
        )
        for element in elements:
            if element.is_constant:
                head = ["", "", "", "", 0.0]
            else:
                lam = eigenvalue(tree, kernel, element.gamma, element.parent)
                head = [element.gamma, format_path(tree.base, element.parent.path), element.b, element.k, lam]
            table.add_row(*head, *[float(v) for v in element.function.values])
        emit(table, meta, fmt, out)

        display_summary("Basis check", {
            "elements": len(elements),
            "support leaves": len(tree.support_leaves()),
            "max Gram residual": residual,
        })
        if residual > GRAM_TOLERANCE:
            err_console.print(f"[yellow]Gram residual {residual:.3e} exceeds {GRAM_TOLERANCE:.0e}[/yellow]")
