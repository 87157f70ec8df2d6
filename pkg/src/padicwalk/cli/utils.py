"""Utility functions for CLI output, formatting and error handling."""

from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Sequence
import csv
import io
import json
import logging
import sys

import click
from rich.console import Console
from rich.table import Table

from ..exceptions import PadicWalkError, ScaleGuardError
from .config import EXIT_CONFIG_ERROR, EXIT_SCALE_GUARD, FLOAT_FORMAT, OUTPUT_FORMATS

logger = logging.getLogger(__name__)

err_console = Console(stderr=True)


def format_value(value: Any) -> str:
    """Floats with 17 significant digits; everything else via str()."""
    if isinstance(value, float):
        return format(value, FLOAT_FORMAT)
    return str(value)


def _json_ready(value: Any) -> Any:
    if isinstance(value, float):
        return float(format(value, FLOAT_FORMAT))
    if isinstance(value, dict):
        return {str(k): _json_ready(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_ready(v) for v in value]
    if hasattr(value, "item"):
        return _json_ready(value.item())
    return value


@dataclass
class RunMeta:
    """Provenance written into every output file."""
    command: str
    config_hash: str = ""
    seed: Optional[int] = None

    def header_lines(self) -> List[str]:
        lines = [f"# padicwalk {self.command}"]
        if self.config_hash:
            lines.append(f"# config_sha256={self.config_hash}")
        if self.seed is not None:
            lines.append(f"# seed={self.seed}")
        return lines

    def as_dict(self) -> Dict[str, Any]:
        meta: Dict[str, Any] = {"command": self.command}
        if self.config_hash:
            meta["config_sha256"] = self.config_hash
        if self.seed is not None:
            meta["seed"] = self.seed
        return meta


@dataclass
class ResultTable:
    columns: List[str]
    rows: List[Sequence[Any]] = field(default_factory=list)
    extra: Dict[str, Any] = field(default_factory=dict)

    def add_row(self, *values: Any) -> None:
        self.rows.append(values)


def render_csv(table: ResultTable, meta: RunMeta) -> str:
    buffer = io.StringIO()
    for line in meta.header_lines():
        buffer.write(line + "\n")
    for key, value in table.extra.items():
        buffer.write(f"# {key}={format_value(value)}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([format_value(v) for v in row])
    return buffer.getvalue()


def render_json(table: ResultTable, meta: RunMeta) -> str:
    payload = {
        "_meta": meta.as_dict(),
        **_json_ready(table.extra),
        "rows": [dict(zip(table.columns, _json_ready(list(row)))) for row in table.rows],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def emit(table: ResultTable, meta: RunMeta, fmt: str, out: Optional[str]) -> None:
    """Write results to `out`, or to standard output when no path is given."""
    text = render_csv(table, meta) if fmt == "csv" else render_json(table, meta)
    if out:
        Path(out).write_text(text)
        err_console.print(f"[green]✓ Wrote {len(table.rows)} rows to {out}[/green]")
    else:
        click.echo(text, nl=False)


def write_json_file(path: Path, payload: Dict[str, Any], meta: RunMeta) -> None:
    path.write_text(json.dumps({"_meta": meta.as_dict(), **_json_ready(payload)}, indent=2, sort_keys=True) + "\n")


def display_summary(title: str, items: Dict[str, Any]) -> None:
    """Key/value table on standard error."""
    table = Table(title=title)
    table.add_column("Metric", style="cyan")
    table.add_column("Value", style="green")
    for key, value in items.items():
        table.add_row(key, format_value(value))
    err_console.print(table)


@contextmanager
def handle_errors(command: str) -> Iterator[None]:
    """Map library errors to exit codes."""
    try:
        yield
    except ScaleGuardError as e:
        err_console.print(f"[red]Error during {command}: {e}[/red]")
        logger.debug("Scale guard", exc_info=True)
        sys.exit(EXIT_SCALE_GUARD)
    except PadicWalkError as e:
        err_console.print(f"[red]Error during {command}: {e}[/red]")
        logger.debug("Configuration or validation error", exc_info=True)
        sys.exit(EXIT_CONFIG_ERROR)
    except ValueError as e:
        err_console.print(f"[red]Invalid input for {command}: {e}[/red]")
        logger.debug("Invalid input", exc_info=True)
        sys.exit(EXIT_CONFIG_ERROR)


def output_options(func):
    """--out and --format, shared by every command."""
    func = click.option('--format', 'fmt', type=click.Choice(OUTPUT_FORMATS), default='csv',
                        help='Output format')(func)
    func = click.option('--out', '-o', type=click.Path(dir_okay=False), default=None,
                        help='Output file (standard output when omitted)')(func)
    return func


def config_option(func):
    return click.option('--config', '-c', 'config_path', required=True,
                        type=click.Path(exists=True, dir_okay=False),
                        help='JSON run config')(func)


def parse_times(text: Optional[str]) -> Optional[List[float]]:
    """Comma-separated floats from --times."""
    if text is None:
        return None
    try:
        times = [float(t) for t in text.split(",") if t.strip()]
    except ValueError as e:
        raise click.BadParameter(f"Invalid --times {text!r}") from e
    if not times or any(t < 0 for t in times):
        raise click.BadParameter("--times needs non-negative values")
    return times
