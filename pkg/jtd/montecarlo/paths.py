"""
Exact event-driven simulation of the market. Holding times are exponential and, given the switch times, the log-price
is Gaussian on every holding interval, so no time discretisation is involved.

Paths are simulated in chunks. Chunk k draws from its own PCG64 stream seeded by SeedSequence(seed, spawn_key=(k,)),
so results depend on the seed and the chunk size but not on the number of worker threads.
"""
import concurrent.futures
import csv
import dataclasses
import logging
import math
import os
import typing

import numpy as np

from jtd.errors import DomainError
from jtd.measure.girsanov import transform_market
from jtd.model.params import AssetParams, MarketModel, MeasureShift, State, check_state
from jtd.regime.sampling import simulate_flow

logger = logging.getLogger(__name__)

DEFAULT_CHUNK_SIZE = 50000


def thread_count() -> int:
    """
    :return: The number of worker threads: `JTD_THREADS` when set, otherwise the number of CPUs.
    """
    value = os.environ.get('JTD_THREADS')
    if value:
        try:
            return max(1, int(value))
        except ValueError:
            logger.warning("Ignoring JTD_THREADS=%r: not an integer.", value)
    return os.cpu_count() or 1


def chunk_sizes(n_paths: int, chunk_size: int) -> typing.List[int]:
    if n_paths < 1 or chunk_size < 1:
        raise DomainError("The number of paths and the chunk size must be positive.")
    full, rest = divmod(n_paths, chunk_size)
    return [chunk_size] * full + ([rest] if rest else [])


@dataclasses.dataclass(frozen=True)
class PathBatch(object):
    """
    Sufficient statistics of a chunk of paths over [0, horizon]: the time spent in state 0, the Brownian increments
    accumulated in each state, the number of switches out of each state and the terminal state. Every quantity the
    estimators need is an exact function of these.
    """
    horizon: float
    start_state: State
    occupation0: np.ndarray
    brownian: np.ndarray
    leaving: np.ndarray
    terminal_state: np.ndarray

    @property
    def n_paths(self) -> int:
        return len(self.occupation0)

    @property
    def occupation(self) -> typing.Tuple[np.ndarray, np.ndarray]:
        return self.occupation0, self.horizon - self.occupation0

    @property
    def switch_counts(self) -> np.ndarray:
        return self.leaving.sum(axis=0)

    def telegraph(self, velocities: typing.Tuple[float, float]) -> np.ndarray:
        t0, t1 = self.occupation
        return velocities[0] * t0 + velocities[1] * t1

    def jumps(self, sizes: typing.Tuple[float, float]) -> np.ndarray:
        return sizes[0] * self.leaving[0] + sizes[1] * self.leaving[1]

    def diffusion(self, volatilities: typing.Tuple[float, float]) -> np.ndarray:
        return volatilities[0] * self.brownian[0] + volatilities[1] * self.brownian[1]

    def log_jump_product(self, sizes: typing.Tuple[float, float]) -> np.ndarray:
        return self.leaving[0] * math.log1p(sizes[0]) + self.leaving[1] * math.log1p(sizes[1])

    def quadratic_variation(self, volatilities: typing.Tuple[float, float]) -> np.ndarray:
        t0, t1 = self.occupation
        return volatilities[0] ** 2 * t0 + volatilities[1] ** 2 * t1

    def log_growth(self, asset: AssetParams) -> np.ndarray:
        """
        :return: log(S(T) / S(0)) = T + D - (1/2) int sigma^2 + log kappa.
        """
        return (self.telegraph(asset.velocities) + self.diffusion(asset.volatilities)
                - 0.5 * self.quadratic_variation(asset.volatilities) + self.log_jump_product(asset.jumps))

    def prices(self, asset: AssetParams) -> np.ndarray:
        return asset.s0 * np.exp(self.log_growth(asset))

    def log_bond(self, rates: typing.Tuple[float, float]) -> np.ndarray:
        return self.telegraph(rates)

    def log_density(self, shift: MeasureShift) -> np.ndarray:
        """
        :return: log Z(T) of the measure given by `shift`.
        """
        return (self.telegraph(shift.c_star) + self.diffusion(shift.sigma_star)
                - 0.5 * self.quadratic_variation(shift.sigma_star) + self.log_jump_product(shift.h_star))


@dataclasses.dataclass(frozen=True)
class PathRecord(object):
    """
    A single simulated path: its switch times, the visited states and the standard normal draw of every holding
    interval, with the terminal log-prices, bond value and jump products they imply.
    """
    start_state: State
    horizon: float
    switch_times: typing.Tuple[float, ...]
    regimes: typing.Tuple[int, ...]
    gaussians: typing.Tuple[float, ...]
    log_stock_terminal: typing.Tuple[float, ...]
    bond_terminal: float
    jump_product: typing.Tuple[float, ...]

    @property
    def durations(self) -> typing.Tuple[float, ...]:
        bounds = (0.0,) + self.switch_times + (self.horizon,)
        return tuple(b - a for a, b in zip(bounds[:-1], bounds[1:]))


class _Segments(object):
    """
    Collects the holding intervals of a chunk and draws their Gaussian increments.
    """

    def __init__(self, size: int, rng: np.random.Generator, keep: bool):
        self.rng = rng
        self.brownian = np.zeros((2, size))
        self.keep = keep
        self.parts: typing.List[typing.Tuple[np.ndarray, ...]] = []

    def __call__(self, index: np.ndarray, states: np.ndarray, starts: np.ndarray, durations: np.ndarray) -> None:
        z = self.rng.standard_normal(index.size)
        self.brownian[states, index] += np.sqrt(durations) * z
        if self.keep:
            self.parts.append((index, states, starts, durations, z))


def _seed_sequence(seed: int, chunk: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(seed, spawn_key=(chunk,))


def _simulate_chunk(market: MarketModel, horizon: float, start_state: State, size: int, seed: int, chunk: int,
                    keep: bool = False) -> typing.Tuple[PathBatch, _Segments]:
    rng = np.random.Generator(np.random.PCG64(_seed_sequence(seed, chunk)))
    segments = _Segments(size, rng, keep)
    flow = simulate_flow(market.intensities, start_state, horizon, size, rng, segments)
    batch = PathBatch(horizon=horizon, start_state=start_state, occupation0=flow.occupation0,
                      brownian=segments.brownian, leaving=flow.leaving, terminal_state=flow.terminal_state)
    return batch, segments


def _prepare(market: MarketModel, measure: typing.Optional[MeasureShift], start_state: State,
             horizon: float) -> MarketModel:
    check_state(start_state)
    if not horizon >= 0:
        raise DomainError(f"The horizon must be nonnegative, got {horizon}.")
    return market if measure is None else transform_market(market, measure)


def simulate_batches(market: MarketModel, horizon: float, n_paths: int, seed: int, start_state: State = 0,
                     measure: typing.Optional[MeasureShift] = None, chunk_size: int = DEFAULT_CHUNK_SIZE,
                     threads: typing.Optional[int] = None) -> typing.Iterator[PathBatch]:
    """
    Simulates `n_paths` paths of the market, under the measure given by `measure` when set.

    :return: The batches in chunk order.
    """
    market = _prepare(market, measure, start_state, horizon)
    sizes = chunk_sizes(n_paths, chunk_size)
    threads = threads or thread_count()
    logger.debug("Simulating %d paths in %d chunks on %d threads.", n_paths, len(sizes), threads)

    def run(chunk: int) -> PathBatch:
        return _simulate_chunk(market, horizon, start_state, sizes[chunk], seed, chunk)[0]

    if threads == 1 or len(sizes) == 1:
        yield from map(run, range(len(sizes)))
        return
    with concurrent.futures.ThreadPoolExecutor(max_workers=min(threads, len(sizes))) as executor:
        yield from executor.map(run, range(len(sizes)))


def _records(market: MarketModel, batch: PathBatch, segments: _Segments) -> typing.Iterator[PathRecord]:
    index, states, starts, durations, z = (np.concatenate(column) for column in zip(*segments.parts))
    order = np.argsort(index, kind='stable')
    index, states, starts, durations, z = (a[order] for a in (index, states, starts, durations, z))
    bounds = np.flatnonzero(np.diff(index)) + 1
    log_stock = [batch.log_growth(asset) for asset in market.assets]
    log_kappa = [batch.log_jump_product(asset.jumps) for asset in market.assets]
    bond = np.exp(batch.log_bond(market.rates))
    for path, (path_states, path_starts, path_z) in enumerate(zip(np.split(states, bounds), np.split(starts, bounds),
                                                                   np.split(z, bounds))):
        yield PathRecord(
            start_state=batch.start_state,
            horizon=batch.horizon,
            switch_times=tuple(float(s) for s in path_starts[1:]),
            regimes=tuple(int(s) for s in path_states),
            gaussians=tuple(float(v) for v in path_z),
            log_stock_terminal=tuple(float(v[path]) for v in log_stock),
            bond_terminal=float(bond[path]),
            jump_product=tuple(math.exp(v[path]) for v in log_kappa),
        )


def simulate_paths(market: MarketModel, measure: typing.Optional[MeasureShift], start_state: State, horizon: float,
                   n_paths: int, seed: int, chunk_size: int = DEFAULT_CHUNK_SIZE) -> typing.Iterator[PathRecord]:
    """
    Simulates paths one chunk at a time and yields them individually. The draws are those of `simulate_batches` with
    the same arguments, so record k describes path k of the batches.
    """
    market = _prepare(market, measure, start_state, horizon)
    for chunk, size in enumerate(chunk_sizes(n_paths, chunk_size)):
        batch, segments = _simulate_chunk(market, horizon, start_state, size, seed, chunk, keep=True)
        yield from _records(market, batch, segments)


def write_path_dump(paths: typing.Iterable[PathRecord], stream: typing.TextIO) -> int:
    """
    Writes one CSV row per holding interval.

    :return: The number of paths written.
    """
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(['path', 'segment', 'start', 'end', 'regime', 'gaussian'])
    count = 0
    for number, path in enumerate(paths):
        bounds = (0.0,) + path.switch_times + (path.horizon,)
        for segment, (regime, z) in enumerate(zip(path.regimes, path.gaussians)):
            writer.writerow([number, segment, format(bounds[segment], '.17g'), format(bounds[segment + 1], '.17g'),
                             regime, format(z, '.17g')])
        count += 1
    return count
