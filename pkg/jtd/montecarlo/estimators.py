import dataclasses
import logging
import math
import typing

import numpy as np

from jtd.errors import DomainError
from jtd.measure.girsanov import transform_market
from jtd.model.params import MarketModel, MeasureShift, State
from jtd.montecarlo.paths import DEFAULT_CHUNK_SIZE, simulate_batches
from jtd.montecarlo.payoffs import Functional

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class EstimatorResult(object):
    """
    A Monte Carlo mean with its standard error, sample standard deviation over the square root of the path count.
    """
    mean: float
    std_error: float
    n_paths: int
    seed: int

    def z_score(self, value: float) -> float:
        """
        :return: The distance from `value` in standard errors.
        """
        if self.std_error == 0:
            return 0.0 if value == self.mean else math.inf
        return abs(self.mean - value) / self.std_error

    def agrees_with(self, value: float, n_se: float = 3.0) -> bool:
        return self.z_score(value) <= n_se

    def as_dict(self) -> typing.Dict[str, typing.Any]:
        return dataclasses.asdict(self)


def _result(values: np.ndarray, seed: int) -> EstimatorResult:
    n_paths = len(values)
    std_error = float(np.std(values, ddof=1) / math.sqrt(n_paths)) if n_paths > 1 else 0.0
    return EstimatorResult(mean=float(np.mean(values)), std_error=std_error, n_paths=n_paths, seed=seed)


def estimate(market: MarketModel, functional: Functional, horizon: float, n_paths: int, seed: int,
             start_state: State = 0, measure: typing.Optional[MeasureShift] = None,
             weight: typing.Optional[str] = None, chunk_size: int = DEFAULT_CHUNK_SIZE,
             threads: typing.Optional[int] = None) -> EstimatorResult:
    """
    Estimates the expectation of `functional` at the horizon.

    Without `weight` the paths follow the measure given by `measure` (the physical one when unset). With
    `weight='density'` the paths follow the physical measure and every value is multiplied by the density Z(T) of
    `measure`, which by the Girsanov theorem estimates the same expectation.
    """
    if weight not in (None, 'density'):
        raise ValueError(f"Unknown weight {weight!r}.")
    if weight == 'density':
        if measure is None:
            raise DomainError("Density weighting needs a measure shift.")
        simulation_measure, evaluation_market = None, market
    else:
        simulation_measure = measure
        evaluation_market = market if measure is None else transform_market(market, measure)

    parts = []
    for batch in simulate_batches(market, horizon, n_paths, seed, start_state, simulation_measure, chunk_size,
                                  threads):
        values = functional(batch, evaluation_market)
        if weight == 'density':
            values = values * np.exp(batch.log_density(measure))
        parts.append(values)
    result = _result(np.concatenate(parts), seed)
    logger.debug("Estimated %s: %r +- %g over %d paths.", functional.key, result.mean, result.std_error, n_paths)
    return result


def estimate_discounted_payoff(market: MarketModel, measure: typing.Optional[MeasureShift], payoff: Functional,
                               horizon: float, n_paths: int, seed: int, start_state: State = 0,
                               chunk_size: int = DEFAULT_CHUNK_SIZE) -> EstimatorResult:
    """
    Estimates E*[B(T)^-1 g(S(T))] for a discounted payoff such as `identity` or `call` under the risk-neutral measure.
    """
    return estimate(market, payoff, horizon, n_paths, seed, start_state=start_state, measure=measure,
                    chunk_size=chunk_size)


@dataclasses.dataclass(frozen=True)
class SimulationSummary(object):
    """
    Means over a simulation run: switches, time spent in state 0, terminal state, bond, and per asset the terminal and
    discounted terminal price.
    """
    horizon: float
    start_state: State
    measure: str
    switch_count: EstimatorResult
    occupation0: EstimatorResult
    terminal_state0: EstimatorResult
    bond: EstimatorResult
    prices: typing.Tuple[EstimatorResult, ...]
    discounted_prices: typing.Tuple[EstimatorResult, ...]

    def as_dict(self) -> typing.Dict[str, typing.Any]:
        return {
            'horizon': self.horizon,
            'start_state': self.start_state,
            'measure': self.measure,
            'n_paths': self.switch_count.n_paths,
            'seed': self.switch_count.seed,
            'switch_count': self.switch_count.as_dict(),
            'occupation0': self.occupation0.as_dict(),
            'terminal_state0': self.terminal_state0.as_dict(),
            'bond': self.bond.as_dict(),
            'assets': [{'price': p.as_dict(), 'discounted_price': d.as_dict()}
                       for p, d in zip(self.prices, self.discounted_prices)],
        }


def summarize(market: MarketModel, horizon: float, n_paths: int, seed: int, start_state: State = 0,
              measure: typing.Optional[MeasureShift] = None, chunk_size: int = DEFAULT_CHUNK_SIZE,
              threads: typing.Optional[int] = None) -> SimulationSummary:
    """
    Simulates the market, under the measure given by `measure` when set, and summarises the paths.
    """
    evaluation_market = market if measure is None else transform_market(market, measure)
    columns: typing.Dict[str, typing.List[np.ndarray]] = {}

    def add(key: str, values: np.ndarray) -> None:
        columns.setdefault(key, []).append(np.asarray(values, dtype=float))

    for batch in simulate_batches(market, horizon, n_paths, seed, start_state, measure, chunk_size, threads):
        bond = np.exp(batch.log_bond(evaluation_market.rates))
        add('switch_count', batch.switch_counts)
        add('occupation0', batch.occupation0)
        add('terminal_state0', batch.terminal_state == 0)
        add('bond', bond)
        for m, asset in enumerate(evaluation_market.assets, start=1):
            prices = batch.prices(asset)
            add(f'price{m}', prices)
            add(f'discounted_price{m}', prices / bond)

    results = {key: _result(np.concatenate(parts), seed) for key, parts in columns.items()}
    count = len(market.assets)
    return SimulationSummary(
        horizon=horizon,
        start_state=start_state,
        measure='physical' if measure is None else 'risk-neutral',
        switch_count=results['switch_count'],
        occupation0=results['occupation0'],
        terminal_state0=results['terminal_state0'],
        bond=results['bond'],
        prices=tuple(results[f'price{m}'] for m in range(1, count + 1)),
        discounted_prices=tuple(results[f'discounted_price{m}'] for m in range(1, count + 1)),
    )
