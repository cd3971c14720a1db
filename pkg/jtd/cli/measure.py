import click

from jtd.app import JTD
from jtd.cli import cli, config_argument, error, exit_on_errors, pass_app, time_option, write_times
from jtd.cli.formatting import format_json
from jtd.measure.report import MODES

# Exit codes by classification of the market
CLASSIFICATION_CODES = {'arbitrage': 3, 'incomplete': 3, 'invalid': 2}


def measure_values(mode, theta0, theta1, k0, k1):
    """
    :return: The parameters a measure mode takes from the command line.
    """
    required = {'family': {'theta0': theta0, 'theta1': theta1}, 'change-of-state': {'k0': k0, 'k1': k1}}.get(mode, {})
    missing = [f"--{key}" for key, value in required.items() if value is None]
    if missing:
        error(f"mode '{mode}' needs {' and '.join(missing)}", 2)
    return required


@cli.command()
@click.option('--mode', '-m', type=click.Choice(MODES), default=None,
              help="How to obtain the measure. Defaults to the measure of the configuration file, or completion of a "
                   "two-asset market.")
@click.option('--theta0', type=click.FLOAT, default=None, help="Risk-neutral intensity of state 0 (family mode).")
@click.option('--theta1', type=click.FLOAT, default=None, help="Risk-neutral intensity of state 1 (family mode).")
@click.option('--k0', type=click.FLOAT, default=None, help="Parameter k0 (change-of-state mode).")
@click.option('--k1', type=click.FLOAT, default=None, help="Parameter k1 (change-of-state mode).")
@time_option
@config_argument
@pass_app
def measure(app: JTD, config, mode, theta0, theta1, k0, k1, time):
    """Find a risk-neutral measure of the market and write it as JSON."""
    values = measure_values(mode, theta0, theta1, k0, k1)

    with exit_on_errors():
        with app.time('Load'):
            rc = app.build_config().load(config)
            rc.validate().report().raise_for_violations()
        with app.time('Measure'):
            report = rc.measure(mode, **values).measure_report()

    click.echo(format_json(report))
    write_times(app, time)

    code = CLASSIFICATION_CODES.get(report.classification)
    if code is not None:
        error(report.message, code)
