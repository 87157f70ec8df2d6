"""padicwalk CLI Interface."""

from pathlib import Path
from dotenv import load_dotenv

# Load .env file from the project root, else from the current directory
env_path = Path(__file__).parent.parent.parent.parent / '.env'
if env_path.exists():
    load_dotenv(env_path)
else:
    load_dotenv()

import click
import logging

from .config import LOG_FORMAT, LOG_LEVEL


@click.group()
@click.version_option(prog_name='padicwalk')
@click.option('--verbose', '-v', is_flag=True, help='Log at DEBUG level')
@click.pass_context
def cli(ctx, verbose: bool):
    """
    padicwalk: ultrametric random walks embedded into Q_p.

    Spectra, orthonormal wavelet bases and Cauchy solutions of the
    measure-weighted operator W_m, checked against dense and Monte-Carlo
    oracles.
    """
    ctx.ensure_object(dict)
    logging.basicConfig(
        level=logging.DEBUG if verbose else getattr(logging, LOG_LEVEL, logging.WARNING),
        format=LOG_FORMAT,
    )


# Import and register commands
from .commands import embed, spectrum, basis, solve, simulate, compare, potential, growth

cli.add_command(embed.embed)
cli.add_command(spectrum.spectrum)
cli.add_command(basis.basis_check)
cli.add_command(solve.solve)
cli.add_command(simulate.simulate)
cli.add_command(compare.compare)
cli.add_command(potential.potential)
cli.add_command(growth.growth)
