import click

from jtd.app import JTD
from jtd.cli import cli, config_argument, control_options, exit_on_errors, pass_app, time_option, write_times
from jtd.cli.formatting import format_json
from jtd.montecarlo.paths import write_path_dump


@cli.command()
@click.option('--horizon', '-T', type=click.FLOAT, required=True, help="The horizon of the paths.")
@click.option('--risk-neutral/--physical', default=False, help="The measure to simulate under.")
@click.option('--dump', type=click.Path(dir_okay=False, writable=True), default=None,
              help="Write the holding intervals of the first paths to this CSV file.")
@click.option('--dump-limit', type=click.IntRange(min=1), default=1000, help="Number of paths to dump.")
@control_options('start_state', 'seed', 'n_paths', 'chunk_size')
@time_option
@config_argument
@pass_app
def simulate(app: JTD, config, horizon, risk_neutral, dump, dump_limit, time):
    """Simulate the market and write a JSON summary of the paths."""
    with exit_on_errors():
        with app.time('Load'):
            rc = app.build_config().load(config)
            rc.validate().report().raise_for_violations()
            if risk_neutral:
                rc = rc.measure()
        with app.time('Simulate'):
            summary = rc.simulate(horizon, risk_neutral=risk_neutral)
        result = summary.as_dict()
        if dump is not None:
            with app.time('Dump'), open(dump, 'w', newline='') as stream:
                result['dumped'] = write_path_dump(rc.paths(horizon, dump_limit, risk_neutral=risk_neutral), stream)

    click.echo(format_json(result))
    write_times(app, time)
