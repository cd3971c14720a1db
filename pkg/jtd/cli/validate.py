import click

from jtd.app import JTD
from jtd.cli import cli, config_argument, exit_on_errors, pass_app, time_option, write_times
from jtd.cli.formatting import JTDFormatter, format_json


@cli.command()
@click.option('--densities/--no-densities', default=False,
              help="Also check the conditions the telegraph densities need.")
@click.option('--json', 'as_json', is_flag=True, default=False, help="Write the report as JSON.")
@time_option
@config_argument
@pass_app
def validate(app: JTD, config, densities, as_json, time):
    """Check a market configuration. Exits with 0 when every model invariant holds and 2 otherwise."""
    with exit_on_errors():
        with app.time('Load'):
            rc = app.build_config().load(config)
        with app.time('Validate'):
            report = rc.validate(densities=densities).report()

    if as_json:
        click.echo(format_json(report))
    else:
        formatter = JTDFormatter()
        formatter.write_report(report)
        click.echo(formatter.getvalue(), nl=False)

    write_times(app, time)
    if not report.is_valid:
        click.get_current_context().exit(2)
