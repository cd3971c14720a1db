"""
Densities of the time the flow spends in state 0 up to a horizon.
"""
import dataclasses
import math
import typing

import numpy as np

from jtd.errors import DomainError
from jtd.model.params import Atom, RegimeParams, State, check_state
from jtd.regime.counts import truncation_order
from jtd.regime.kernels import log_bessel_kernel, log_count_kernel
from jtd.util.quadrature import DEFAULT_NODES, sine_squared_rule


def _scalar(value: np.ndarray):
    return float(value) if np.ndim(value) == 0 else value


def _check_times(tau, t: float) -> np.ndarray:
    tau = np.asarray(tau, dtype=float)
    if not t > 0:
        raise DomainError(f"Spending-time densities need a positive horizon, got {t}.")
    if np.any(tau < 0) or np.any(tau > t) or np.any(np.isnan(tau)):
        raise DomainError(f"The time spent in state 0 must lie in [0, {t}].")
    return tau


def spending_time_pdf_n(params: RegimeParams, start_state: State, tau, t: float, n: int):
    """
    Density of the time spent in state 0 jointly with exactly n switches.

    :param params: The regime parameters; only the intensities are used.
    :param start_state: The initial state.
    :param tau: The time(s) spent in state 0, within [0, t].
    :param t: The horizon.
    :param n: The number of switches, at least 1.
    :return: The density value(s).
    """
    check_state(start_state)
    if n < 1:
        raise DomainError("Without switches the spending time is a point mass; use spending_time_density for the atom.")
    tau = _check_times(tau, t)
    return _scalar(np.exp(log_count_kernel(start_state, n, tau, t - tau, params.intensities)))


def spending_time_pdf(params: RegimeParams, start_state: State, tau, t: float):
    """
    Absolutely continuous part of the density of the time spent in state 0, in the Bessel closed form

        f_0(tau, t) = exp(-lambda0 tau - lambda1 (t - tau)) [lambda0 I0(z) + sqrt(lambda0 lambda1 tau / (t - tau)) I1(z)]

    with z = 2 sqrt(lambda0 lambda1 tau (t - tau)); a start in state 1 swaps tau and t - tau in the square root.
    """
    check_state(start_state)
    tau = _check_times(tau, t)
    return _scalar(np.exp(log_bessel_kernel(start_state, tau, t - tau, params.intensities)))


def spending_time_pdf_series(params: RegimeParams, start_state: State, tau, t: float,
                             n_max: typing.Optional[int] = None):
    """
    The same density as `spending_time_pdf`, summed from the per-count densities up to the truncation order.
    """
    check_state(start_state)
    tau = _check_times(tau, t)
    if n_max is None:
        n_max = max(1, truncation_order(max(params.intensities), t))
    counts = np.arange(1, n_max + 1).reshape((-1,) + (1,) * tau.ndim)
    terms = np.exp(log_count_kernel(start_state, counts, tau, t - tau, params.intensities))
    return _scalar(np.sum(terms, axis=0))


@dataclasses.dataclass(frozen=True)
class SpendingTimeDensity(object):
    """
    The law of the time spent in state 0: a point mass for paths without switches plus an absolutely continuous part
    on (0, t).
    """
    params: RegimeParams
    start_state: State
    t: float

    @property
    def atom(self) -> Atom:
        return Atom(weight=self.atom_weight, location=self.atom_location)

    @property
    def atom_weight(self) -> float:
        return math.exp(-self.params.intensities[self.start_state] * self.t)

    @property
    def atom_location(self) -> float:
        return self.t if self.start_state == 0 else 0.0

    def ac_density(self, tau):
        return spending_time_pdf(self.params, self.start_state, tau, self.t)

    def _integrate(self, func: typing.Callable[[np.ndarray], np.ndarray], n_nodes: int) -> float:
        tau, weights = sine_squared_rule(self.t, n_nodes)
        return float(np.sum(weights * self.ac_density(tau) * func(tau)))

    def total_mass(self, n_nodes: int = DEFAULT_NODES) -> float:
        """
        :return: The atom weight plus the integral of the absolutely continuous part.
        """
        return self.atom_weight + self._integrate(np.ones_like, n_nodes)

    def mean(self, n_nodes: int = DEFAULT_NODES) -> float:
        """
        :return: The expected time spent in state 0.
        """
        return self.atom_weight * self.atom_location + self._integrate(lambda tau: tau, n_nodes)


def spending_time_density(params: RegimeParams, start_state: State, t: float) -> SpendingTimeDensity:
    check_state(start_state)
    if not t > 0:
        raise DomainError(f"Spending-time densities need a positive horizon, got {t}.")
    return SpendingTimeDensity(params=params, start_state=start_state, t=t)
