"""
Exact simulation of the two-state switching flow.
"""
import dataclasses
import typing

import numpy as np

from jtd.errors import DomainError
from jtd.model.params import RegimeParams, State, check_state


Seed = typing.Union[int, np.random.SeedSequence, np.random.Generator, None]
Intensities = typing.Tuple[float, float]

# Called once per simulated holding interval with the path indices, their states, the start times of the intervals
# and their lengths (truncated at the horizon).
SegmentVisitor = typing.Callable[[np.ndarray, np.ndarray, np.ndarray, np.ndarray], None]


def make_rng(seed: Seed) -> np.random.Generator:
    """
    :param seed: An integer seed, a seed sequence or an existing generator.
    :return: A PCG64 generator.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, np.random.SeedSequence):
        return np.random.Generator(np.random.PCG64(seed))
    return np.random.default_rng(seed)


@dataclasses.dataclass(frozen=True)
class FlowSample(object):
    """
    Per-path summary of simulated flows over [0, t].
    """
    t: float
    start_state: State
    occupation0: np.ndarray
    leaving: np.ndarray
    terminal_state: np.ndarray

    @property
    def n_paths(self) -> int:
        return len(self.occupation0)

    @property
    def counts(self) -> np.ndarray:
        """
        :return: The number of switches per path.
        """
        return self.leaving.sum(axis=0)


def simulate_flow(intensities: Intensities, start_state: State, t: float, size: int, rng: np.random.Generator,
                  visitor: typing.Optional[SegmentVisitor] = None) -> FlowSample:
    """
    Simulates `size` independent flows, advancing all unfinished paths one holding interval per iteration. Holding
    times in state j are Exponential(lambda_j).

    :param intensities: The switching intensities.
    :param start_state: The initial state of every path.
    :param t: The horizon.
    :param size: The number of paths.
    :param rng: The random generator; draws are consumed in a fixed order so results depend on the seed only.
    :param visitor: Optional callback receiving every holding interval.
    :return: Occupation times, switch counts per left state, and terminal states.
    """
    check_state(start_state)
    if not t >= 0:
        raise DomainError(f"The horizon must be nonnegative, got {t}.")
    rates = np.asarray(intensities, dtype=float)
    state = np.full(size, start_state, dtype=np.int8)
    clock = np.zeros(size)
    occupation0 = np.zeros(size)
    leaving = np.zeros((2, size), dtype=np.int64)
    alive = np.flatnonzero(np.ones(size, dtype=bool))

    while alive.size:
        current = state[alive]
        hold = rng.standard_exponential(alive.size) / rates[current]
        remaining = t - clock[alive]
        switched = hold < remaining
        duration = np.where(switched, hold, remaining)
        if visitor is not None:
            visitor(alive, current, clock[alive], duration)
        occupation0[alive] += np.where(current == 0, duration, 0.0)
        clock[alive] += duration
        moving = alive[switched]
        leaving[current[switched], moving] += 1
        state[moving] = 1 - state[moving]
        alive = moving

    return FlowSample(t=t, start_state=start_state, occupation0=occupation0, leaving=leaving,
                      terminal_state=state.astype(np.int64))


def sample_switch_times(params: RegimeParams, start_state: State, t: float,
                        rng_seed: Seed = None) -> typing.Tuple[np.ndarray, np.ndarray]:
    """
    Samples one path of the flow.

    :param params: The regime parameters; only the intensities are used.
    :param start_state: The initial state.
    :param t: The horizon.
    :param rng_seed: The seed or generator.
    :return: The strictly increasing switch times in (0, t] and the labels of the visited states, one more than the
    number of switches.
    """
    check_state(start_state)
    if not t >= 0:
        raise DomainError(f"The horizon must be nonnegative, got {t}.")
    rng = make_rng(rng_seed)
    times = []
    labels = [start_state]
    clock = 0.0
    while True:
        clock += rng.standard_exponential() / params.intensities[labels[-1]]
        if clock >= t:
            break
        times.append(clock)
        labels.append(1 - labels[-1])
    return np.asarray(times, dtype=float), np.asarray(labels, dtype=np.int64)


def sample_spending_times(params: RegimeParams, start_state: State, t: float, size: int,
                          rng_seed: Seed = None) -> FlowSample:
    """
    Samples `size` flows and summarises each by its occupation time and switch counts.
    """
    return simulate_flow(params.intensities, start_state, t, size, make_rng(rng_seed))
