import math
import sys
import typing

import click
import numpy as np

from jtd.app import JTD
from jtd.cli import cli, config_argument, control_options, exit_on_errors, pass_app, time_option, write_times
from jtd.cli.formatting import format_json, write_csv, write_gnuplot
from jtd.model.params import Atom, RegimeParams
from jtd.model.validation import require_valid
from jtd.regime.counts import switch_count_probs, truncation_order
from jtd.regime.spending import spending_time_density, spending_time_pdf_n
from jtd.telegraph.densities import jump_shift, jump_telegraph_atom, jump_telegraph_pdf, jump_telegraph_pdf_n
from jtd.telegraph.mixture import jtd_pdf, telegraph_diffusion_point_mass


KINDS = ('switch-count', 'spending-time', 'telegraph', 'jtd')


class DensityTable(typing.NamedTuple):
    header: typing.Tuple[str, ...]
    rows: typing.List[typing.Tuple[typing.Any, ...]]
    atoms: typing.List[Atom]
    extra: typing.Dict[str, typing.Any]


def support(params: RegimeParams, start_state: int, t: float, spread: float = 0.0) -> typing.Tuple[float, float]:
    """
    :return: An interval holding the telegraph part shifted by the jumps of every count below the truncation order,
    widened by `spread` on both sides.
    """
    count = truncation_order(max(params.intensities), t)
    shifts = [jump_shift(params, start_state, n) for n in range(count + 1)]
    lo = min(params.velocities) * t + min(shifts)
    hi = max(params.velocities) * t + max(shifts)
    return lo - spread, hi + spread


def grid(bounds: typing.Tuple[float, float], x_min: typing.Optional[float], x_max: typing.Optional[float],
         points: int) -> np.ndarray:
    lo = bounds[0] if x_min is None else x_min
    hi = bounds[1] if x_max is None else x_max
    if not hi > lo:
        raise click.BadParameter(f"the grid [{lo}, {hi}] is empty", param_hint='--x-min/--x-max')
    return np.linspace(lo, hi, points)


def curve(name: str, xs: np.ndarray, values: np.ndarray, start_state: int,
          count: typing.Optional[int] = None) -> typing.Tuple[tuple, list]:
    """
    :return: The header and rows of a density curve, tagged with the switch count (or `total` when summed over
    counts) and the start state.
    """
    label = 'total' if count is None else count
    return (name, 'density', 'n_or_total', 'start_state'), [(x, v, label, start_state) for x, v in zip(xs, values)]


def _pure(params: RegimeParams) -> bool:
    return params.sigma0 == params.sigma1 == 0


def density_table(params: RegimeParams, kind: str, start_state: int, t: float, x_min: typing.Optional[float],
                  x_max: typing.Optional[float], points: int, n_max: typing.Optional[int],
                  n_nodes: int, count: typing.Optional[int] = None) -> DensityTable:
    """
    Evaluates the requested density. Point masses are returned separately from the absolutely continuous part.
    With `count` the density jointly with exactly that many switches is returned instead, which has no atom.
    """
    if count is not None and (kind == 'switch-count' or (kind == 'jtd' and not _pure(params))):
        raise click.BadParameter(f"per-count densities are not available for {kind}", param_hint='--n')

    if kind == 'switch-count':
        dist = switch_count_probs(params, start_state, t, n_max=n_max)
        rows = [(n, p) for n, p in enumerate(dist.probs)]
        return DensityTable(('n', 'probability'), rows, [], {'tail_mass': dist.tail_mass, 'mean': dist.mean()})

    if kind == 'spending-time':
        xs = grid((0.0, t), x_min, x_max, points)
        if count is not None:
            return DensityTable(*curve('tau', xs, spending_time_pdf_n(params, start_state, xs, t, count), start_state,
                                       count), [], {})
        density = spending_time_density(params, start_state, t)
        return DensityTable(*curve('tau', xs, density.ac_density(xs), start_state), [density.atom],
                            {'mean': density.mean(n_nodes)})

    if kind == 'telegraph' or _pure(params):
        require_valid(params, densities=True)
        xs = grid(support(params, start_state, t), x_min, x_max, points)
        if count is not None:
            values = np.atleast_1d(jump_telegraph_pdf_n(params, start_state, xs, t, count))
            return DensityTable(*curve('x', xs, values, start_state, count), [], {})
        values = np.atleast_1d(jump_telegraph_pdf(params, start_state, xs, t, n_max))
        return DensityTable(*curve('x', xs, values, start_state), [jump_telegraph_atom(params, start_state, t)], {})

    spread = 4.0 * max(params.volatilities) * math.sqrt(t)
    xs = grid(support(params, start_state, t, spread), x_min, x_max, points)
    values = np.atleast_1d(jtd_pdf(params, start_state, xs, t, n_nodes=n_nodes, n_max=n_max))
    atom = telegraph_diffusion_point_mass(params, start_state, t)
    return DensityTable(*curve('x', xs, values, start_state), [atom] if atom is not None else [], {})


@cli.command()
@click.option('--kind', '-k', type=click.Choice(KINDS), required=True, help="The distribution to tabulate.")
@click.option('--horizon', '-t', type=click.FLOAT, required=True, help="The time t.")
@click.option('--asset', type=click.IntRange(1, 2), default=1, help="The asset whose parameters are used.")
@click.option('--x-min', type=click.FLOAT, default=None, help="Left end of the grid.")
@click.option('--x-max', type=click.FLOAT, default=None, help="Right end of the grid.")
@click.option('--points', type=click.IntRange(min=2), default=201, help="Number of grid points.")
@click.option('--n-max', type=click.IntRange(min=1), default=None,
              help="Largest switch count; defaults to the Poisson truncation rule.")
@click.option('--n', 'count', type=click.IntRange(min=1), default=None,
              help="Tabulate the density jointly with exactly this many switches (spending-time and telegraph).")
@click.option('--output', '-o', type=click.Path(dir_okay=False, writable=True), default=None,
              help="Write the table to this file instead of stdout.")
@click.option('--atoms', type=click.Path(dir_okay=False, writable=True), default=None,
              help="Write the point masses to this JSON file; defaults to <output>.atoms.json, or stderr.")
@click.option('--gnuplot', is_flag=True, default=False, help="Write two whitespace separated columns.")
@control_options('start_state', 'quadrature_nodes')
@time_option
@config_argument
@pass_app
def density(app: JTD, config, kind, horizon, asset, x_min, x_max, points, n_max, count, output, atoms, gnuplot, time):
    """Tabulate the switch count, spending time, jump telegraph or jump telegraph-diffusion distribution."""
    with exit_on_errors():
        with app.time('Load'):
            rc = app.build_config().load(config)
            market = rc.market
            require_valid(market)
            params = market.regime(asset)
            controls = rc.controls
        with app.time('Density'):
            table = density_table(params, kind, controls.start_state, horizon, x_min, x_max, points, n_max,
                                  controls.quadrature_nodes, count)

    if gnuplot:
        header, rows = table.header[:2], [row[:2] for row in table.rows]
        write = write_gnuplot
    else:
        header, rows = table.header, table.rows
        write = write_csv
    if output is None:
        write(sys.stdout, header, rows)
    else:
        with open(output, 'w', newline='') as stream:
            write(stream, header, rows)

    sidecar = format_json({'kind': kind, 'horizon': horizon, 'start_state': controls.start_state,
                           'atoms': [{'weight': a.weight, 'location': a.location} for a in table.atoms],
                           **table.extra})
    if atoms is None and output is not None:
        atoms = f"{output}.atoms.json"
    if atoms is None:
        click.echo(sidecar, err=True)
    else:
        with open(atoms, 'w') as stream:
            stream.write(sidecar + '\n')

    write_times(app, time)
