import click

from jtd.app import JTD
from jtd.cli import cli, config_argument, control_options, error, exit_on_errors, pass_app, time_option, write_times
from jtd.cli.formatting import format_json
from jtd.pricing.call import call_price_bounds


@cli.command()
@click.option('--strike', '-K', type=click.FLOAT, required=True, help="The strike K.")
@click.option('--maturity', '-T', type=click.FLOAT, required=True, help="The maturity T.")
@click.option('--analytic', 'method', flag_value='analytic', default=True, help="Price with the series (default).")
@click.option('--mc', 'method', flag_value='mc', help="Price by Monte Carlo simulation.")
@click.option('--both', 'method', flag_value='both', help="Price both ways and compare.")
@click.option('--max-se', type=click.FLOAT, default=3.0,
              help="With --both, the largest accepted distance in standard errors.")
@control_options('start_state', 'tolerance', 'quadrature_nodes', 'max_terms', 'seed', 'n_paths', 'chunk_size')
@time_option
@config_argument
@pass_app
def price(app: JTD, config, strike, maturity, method, max_se, time):
    """Price a European call on asset 1 under the risk-neutral measure and write the result as JSON."""
    result = {'strike': strike, 'maturity': maturity}

    with exit_on_errors():
        with app.time('Load'):
            rc = app.build_config().load(config)
            rc.validate().report().raise_for_violations()
            rc = rc.measure()
            result['start_state'] = rc.controls.start_state
            result['shift'] = rc.shift()
        if method in ('analytic', 'both'):
            with app.time('Analytic'):
                result['analytic'] = rc.price(strike, maturity)
                result['bounds'] = call_price_bounds(rc.request(strike, maturity))
        if method in ('mc', 'both'):
            with app.time('Monte Carlo'):
                result['monte_carlo'] = rc.price_mc(strike, maturity)

    if method == 'both':
        result['z_score'] = result['monte_carlo'].z_score(result['analytic'].price)

    click.echo(format_json(result))
    write_times(app, time)

    if method == 'both' and result['z_score'] > max_se:
        error(f"Monte Carlo estimate is {result['z_score']:.2f} standard errors from the analytic price "
              f"(limit {max_se})", 4)
