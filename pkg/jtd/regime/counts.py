"""
Distribution of the number of switches of the two-state flow over a horizon.
"""
import dataclasses
import logging
import math
import typing

import numpy as np
from scipy import stats

from jtd.errors import DomainError
from jtd.model.params import RegimeParams, State, check_state
from jtd.regime.kernels import log_count_kernel
from jtd.util.quadrature import DEFAULT_NODES, interval_rule

logger = logging.getLogger(__name__)

DEFAULT_TAIL = 1e-14


def truncation_order(rate: float, t: float, tolerance: float = DEFAULT_TAIL, maximum: typing.Optional[int] = None) -> int:
    """
    Smallest N such that a Poisson(rate * t) variable exceeds N with probability below `tolerance`. Switch counts are
    stochastically dominated by Poisson(max(lambda) t), so every series over switch counts can stop at this order.

    :param rate: The dominating intensity.
    :param t: The horizon.
    :param tolerance: The tail probability target.
    :param maximum: Optional cap on the result.
    :return: The truncation order.
    """
    mean = rate * t
    if mean < 0 or not math.isfinite(mean):
        raise DomainError(f"Truncation needs a finite nonnegative Poisson mean, got {mean}.")
    if mean == 0:
        return 0
    n = max(0, int(stats.poisson.isf(tolerance, mean)) - 1)
    while stats.poisson.sf(n, mean) >= tolerance:
        n += 1
    while n > 0 and stats.poisson.sf(n - 1, mean) < tolerance:
        n -= 1
    if maximum is not None and n > maximum:
        logger.warning("Truncation order %d for mean %g capped at %d.", n, mean, maximum)
        n = maximum
    return n


@dataclasses.dataclass(frozen=True)
class SwitchCountDist(object):
    """
    The probabilities pi_i(t; n) of exactly n switches in [0, t] for n = 0..N, plus an upper bound on the
    probability of more.
    """
    t: float
    start_state: State
    probs: np.ndarray
    tail_mass: float

    @property
    def n_max(self) -> int:
        return len(self.probs) - 1

    def pmf(self, n: int) -> float:
        return float(self.probs[n]) if 0 <= n <= self.n_max else 0.0

    def mean(self) -> float:
        return float(np.sum(np.arange(len(self.probs)) * self.probs))

    def as_dict(self) -> typing.Dict[str, typing.Any]:
        return {'t': self.t, 'start_state': self.start_state, 'probs': [float(p) for p in self.probs],
                'tail_mass': self.tail_mass}


def _check_horizon(t: float) -> None:
    if not t >= 0:
        raise DomainError(f"The horizon must be nonnegative, got {t}.")


def _default_order(params: RegimeParams, t: float, n_max: typing.Optional[int]) -> int:
    if n_max is None:
        return truncation_order(max(params.intensities), t)
    if n_max < 0:
        raise DomainError(f"The number of terms must be nonnegative, got {n_max}.")
    return n_max


def tail_bound(params: RegimeParams, t: float, n_max: int) -> float:
    """
    Upper bound on the probability of more than `n_max` switches in [0, t]. Switch counts are stochastically
    dominated by Poisson(max(lambda) t), so its survival function bounds the tail independently of the computed
    probabilities.
    """
    mean = max(params.intensities) * t
    return float(stats.poisson.sf(n_max, mean)) if mean > 0 else 0.0


def _finish(params: RegimeParams, t: float, start_state: State, probs: np.ndarray) -> SwitchCountDist:
    probs = np.clip(probs, 0.0, 1.0)
    probs.setflags(write=False)
    return SwitchCountDist(t=t, start_state=start_state, probs=probs, tail_mass=tail_bound(params, t, len(probs) - 1))


def switch_count_probs(params: RegimeParams, start_state: State, t: float, n_max: typing.Optional[int] = None,
                       n_nodes: int = DEFAULT_NODES) -> SwitchCountDist:
    """
    Computes pi_i(t; 0) = exp(-lambda_i t) exactly and pi_i(t; n) for n >= 1 by integrating the per-count
    spending-time densities over [0, t].

    :param params: The regime parameters; only the intensities are used.
    :param start_state: The initial state.
    :param t: The horizon.
    :param n_max: The largest count to report; by default the shared truncation rule picks it.
    :param n_nodes: The number of Gauss-Legendre nodes.
    :return: The distribution.
    """
    check_state(start_state)
    _check_horizon(t)
    n_max = _default_order(params, t, n_max)
    probs = np.zeros(n_max + 1)
    if t == 0:
        probs[0] = 1.0
        return _finish(params, t, start_state, probs)

    probs[0] = math.exp(-params.intensities[start_state] * t)
    if n_max > 0:
        tau, weights = interval_rule(0.0, t, n_nodes)
        counts = np.arange(1, n_max + 1)[:, np.newaxis]
        densities = np.exp(log_count_kernel(start_state, counts, tau, t - tau, params.intensities))
        probs[1:] = np.sum(densities * weights, axis=1)
    logger.debug("Switch counts up to %d over t=%g with %d nodes.", n_max, t, n_nodes)
    return _finish(params, t, start_state, probs)


def switch_count_probs_ode(params: RegimeParams, start_state: State, t: float, n_max: typing.Optional[int] = None,
                           steps: int = 2048) -> SwitchCountDist:
    """
    Computes the switch-count probabilities by fixed-step RK4 integration of the counting system

        d/dt pi_i(t; 0) = -lambda_i pi_i(t; 0)
        d/dt pi_i(t; n) = -lambda_i pi_i(t; n) + lambda_i pi_{1-i}(t; n - 1)

    from pi_i(0; n) = 1{n = 0}. Both initial states are integrated together since they are coupled.
    """
    check_state(start_state)
    _check_horizon(t)
    n_max = _default_order(params, t, n_max)
    rates = np.asarray(params.intensities, dtype=float)[:, np.newaxis]

    def derivative(y: np.ndarray) -> np.ndarray:
        dy = -rates * y
        dy[:, 1:] += rates * y[::-1, :-1]
        return dy

    y = np.zeros((2, n_max + 1))
    y[:, 0] = 1.0
    if t > 0:
        h = t / steps
        for _ in range(steps):
            k1 = derivative(y)
            k2 = derivative(y + 0.5 * h * k1)
            k3 = derivative(y + 0.5 * h * k2)
            k4 = derivative(y + h * k3)
            y = y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return _finish(params, t, start_state, y[start_state].copy())
