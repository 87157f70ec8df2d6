"""Embed command for padicwalk CLI."""

from fractions import Fraction
from pathlib import Path
import hashlib
import json
import logging
import sys

import click

from ...embedding import embed as embed_space
from ...embedding import load_distance_csv, parse_dendrogram, to_measure_tree, validate_ultrametric
from ...padic import Base, to_fraction
from ..config import EXIT_CONFIG_ERROR
from ..utils import ResultTable, RunMeta, emit, err_console, handle_errors, output_options, write_json_file

logger = logging.getLogger(__name__)


def input_hash(path: Path, p: int, density: str) -> str:
    """sha256 of the input file together with the embedding options."""
    digest = hashlib.sha256(path.read_bytes())
    digest.update(json.dumps({"p": p, "density": density}, sort_keys=True).encode())
    return digest.hexdigest()


@click.command()
@click.argument('input_path', type=click.Path(exists=True, dir_okay=False))
@click.option('--p', 'p', type=int, default=2, help='Base of the embedding')
@click.option('--density', default='1', help='Density on every embedded leaf (rational)')
@click.option('--measure-out', type=click.Path(dir_okay=False), default=None,
              help='Also write the derived measure file')
@output_options
def embed(input_path: str, p: int, density: str, measure_out: str, out: str, fmt: str):
    """Embed a finite ultrametric space (CSV matrix or dendrogram) into Q_p."""
    with handle_errors("embed"):
        path = Path(input_path)
        if path.suffix.lower() == ".csv":
            space = load_distance_csv(path)
        else:
            space = parse_dendrogram(path.read_text())

        violations = validate_ultrametric(space)
        if violations:
            err_console.print(f"[red]{len(violations)} ultrametric violations:[/red]")
            for violation in violations:
                err_console.print(f"  • {violation}")
            sys.exit(EXIT_CONFIG_ERROR)

        result = embed_space(space, Base(p))
        report = result.to_report()
        meta = RunMeta("embed", config_hash=input_hash(path, p, density))

        table = ResultTable(["label", "path", "point"], extra=report)
        points = result.points()
        for label in space.labels:
            table.add_row(label, report["assignment"][label], str(to_fraction(points[label])))
        emit(table, meta, fmt, out)

        if measure_out:
            tree = to_measure_tree(result, leaf_density=Fraction(density))
            write_json_file(Path(measure_out), tree.to_leaf_table(), meta)
            err_console.print(f"[green]✓ Wrote measure on {len(tree.support_leaves())} leaves to {measure_out}[/green]")
