import contextlib
import functools
import importlib
import logging
import os

import click

from jtd.app import JTD
from jtd.cli.formatting import JTDFormatter
from jtd.config import ConfigError
from jtd.errors import (ArbitrageError, DomainError, IncompleteMarketError, MeasureError, NotEquivalentError,
                        ToleranceError)
from jtd.model.validation import ModelError


pass_app = click.make_pass_decorator(JTD)

# Exit codes by exception, checked in order
EXIT_CODES = (
    ((ArbitrageError, IncompleteMarketError, NotEquivalentError), 3),
    ((ToleranceError,), 4),
    ((ConfigError, ModelError, DomainError, MeasureError), 2),
)

LOG_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


@click.group()
@click.option('--verbose', '-v', count=True, help="Log progress to stderr; repeat for debug output.")
@click.pass_context
def cli(ctx: click.Context, verbose: int) -> None:
    """Densities, risk-neutral measures and option prices for jump telegraph-diffusion markets."""
    logging.basicConfig(level=LOG_LEVELS[min(verbose, len(LOG_LEVELS) - 1)],
                        format='%(levelname)s %(name)s: %(message)s', force=True)
    ctx.obj = JTD()


@cli.command()
def version():
    """Print the program version and platform information."""
    click.echo(f"JTD {JTD.version} ({JTD.build})")
    click.echo(JTD.platform)
    click.echo(f"Monte Carlo threads: {JTD.threads}")


def find_commands():
    """Finds commands for the CLI."""
    for file in os.listdir(os.path.dirname(__file__)):
        if not file.startswith('_') and file.endswith('.py'):
            importlib.import_module('{}.{}'.format(__name__, file[:-3]))


def main():
    """Main method of the CLI."""
    find_commands()
    cli(prog_name="jtd")


def error(msg, code=-1):
    click.echo(f"Error: {msg}", err=True)
    click.get_current_context().exit(code)


@contextlib.contextmanager
def exit_on_errors():
    """
    Turns the errors of a run into an error message and the matching exit code.
    """
    try:
        yield
    except tuple(cls for classes, code in EXIT_CODES for cls in classes) as e:
        error(e, next(code for classes, code in EXIT_CODES if isinstance(e, classes)))


def config_argument(func):
    return click.argument('config', type=click.Path(dir_okay=False))(func)


def time_option(func):
    return click.option('--time/--no-time', 'time', default=False,
                        help="Whether to show run times of different operations on stderr.")(func)


def control_options(*names: str):
    """
    Adds command-line flags for the given run controls. Unset flags leave the configuration file value in place.
    """
    options = {
        'tolerance': click.option('--tolerance', type=click.FLOAT, default=None,
                                  help="Bound on the truncated tail of the pricing series, relative to S0."),
        'quadrature_nodes': click.option('--nodes', 'quadrature_nodes', type=click.IntRange(min=1), default=None,
                                         help="Number of quadrature nodes."),
        'max_terms': click.option('--max-terms', type=click.IntRange(min=1), default=None,
                                  help="Largest switch count of the pricing series."),
        'seed': click.option('--seed', type=click.IntRange(min=0), default=None, help="Monte Carlo seed."),
        'n_paths': click.option('--n-paths', type=click.IntRange(min=1), default=None,
                                help="Number of Monte Carlo paths."),
        'chunk_size': click.option('--chunk-size', type=click.IntRange(min=1), default=None,
                                   help="Number of paths simulated per chunk."),
        'start_state': click.option('--start-state', type=click.IntRange(0, 1), default=None,
                                    help="The state at time zero."),
    }

    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            app = click.get_current_context().find_object(JTD)
            app.set_options(**{name: kwargs.pop(name) for name in names})
            return func(*args, **kwargs)

        for name in reversed(names):
            wrapper = options[name](wrapper)
        return wrapper

    return decorator


def write_times(app: JTD, time: bool) -> None:
    if time:
        formatter = JTDFormatter()
        formatter.write_times(app.get_times())
        click.echo(formatter.getvalue(), nl=False, err=True)
