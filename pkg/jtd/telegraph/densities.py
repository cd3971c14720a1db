"""
Space densities of the jump telegraph process: per switch count, aggregated by series, and the Bessel closed form
available when the jumps cancel.
"""
import dataclasses
import logging
import math
import typing

import numpy as np

from jtd.errors import DomainError
from jtd.model.params import Atom, RegimeParams, State, check_state
from jtd.regime.bessel import log_bessel_i0
from jtd.regime.counts import truncation_order
from jtd.regime.kernels import bessel_argument, log_count_kernel, log_even_sum

logger = logging.getLogger(__name__)

MISMATCH_TOLERANCE = 1e-8


def _scalar(value: np.ndarray):
    return float(value) if np.ndim(value) == 0 else value


def _check(params: RegimeParams, start_state: State, t: float) -> None:
    check_state(start_state)
    if not params.c0 > params.c1:
        raise DomainError(f"Telegraph densities need c0 > c1, got c0 = {params.c0} and c1 = {params.c1}.")
    if not t > 0:
        raise DomainError(f"Telegraph densities need a positive horizon, got {t}.")


def state_times(params: RegimeParams, x, t: float) -> typing.Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Inverts x = c0 a + c1 b with a + b = t.

    :return: The times (a, b) spent in states 0 and 1 that reach x, and the mask of the open support c1 t < x < c0 t.
    """
    x = np.asarray(x, dtype=float)
    width = params.c0 - params.c1
    a = (x - params.c1 * t) / width
    b = (params.c0 * t - x) / width
    return a, b, (x > params.c1 * t) & (x < params.c0 * t)


def jump_shift(params: RegimeParams, start_state: State, n: int) -> float:
    """
    Sum of the jumps after n switches: [(n+1)/2] h_i + [n/2] h_{1-i}.
    """
    return ((n + 1) // 2) * params.jumps[start_state] + (n // 2) * params.jumps[1 - start_state]


def q_density(params: RegimeParams, start_state: State, x, t: float, n: int):
    """
    Density of the telegraph process c0 T0 + c1 T1 jointly with exactly n >= 1 switches: the count kernel at the state
    times that reach x, divided by c0 - c1, and zero outside (c1 t, c0 t).
    """
    _check(params, start_state, t)
    if n < 1:
        raise DomainError("Without switches the telegraph process is a point mass; use jump_telegraph_atom.")
    a, b, inside = state_times(params, x, t)
    with np.errstate(invalid='ignore'):
        values = np.exp(log_count_kernel(start_state, n, a, b, params.intensities)) / (params.c0 - params.c1)
    return _scalar(np.where(inside, values, 0.0))


def jump_telegraph_pdf_n(params: RegimeParams, start_state: State, x, t: float, n: int):
    """
    Density of the jump telegraph process jointly with exactly n switches: q_i shifted by the accumulated jumps.
    """
    return q_density(params, start_state, np.asarray(x, dtype=float) - jump_shift(params, start_state, n), t, n)


def jump_telegraph_atom(params: RegimeParams, start_state: State, t: float) -> Atom:
    """
    :return: The point mass exp(-lambda_i t) at c_i t of paths without switches.
    """
    _check(params, start_state, t)
    return Atom(weight=math.exp(-params.intensities[start_state] * t), location=params.velocities[start_state] * t)


def jump_telegraph_pdf(params: RegimeParams, start_state: State, x, t: float, n_max: typing.Optional[int] = None):
    """
    Absolutely continuous part of the jump telegraph density, summed over switch counts up to the truncation order.
    """
    _check(params, start_state, t)
    if n_max is None:
        n_max = max(1, truncation_order(max(params.intensities), t))
    x = np.asarray(x, dtype=float)
    total = np.zeros_like(x)
    for n in range(1, n_max + 1):
        total = total + jump_telegraph_pdf_n(params, start_state, x, t, n)
    logger.debug("Telegraph series with %d terms.", n_max)
    return _scalar(total)


def jump_telegraph_pdf_bessel(params: RegimeParams, start_state: State, x, t: float):
    """
    Closed form of the jump telegraph density when h0 + h1 = 0. With D = c0 - c1 and theta(x, t) =
    exp(-(lambda1 (c0 t - x) + lambda0 (x - c1 t)) / D), the absolutely continuous part is

        theta(x, t) / D lambda_i exp((lambda0 - lambda1) h_i / D) I0(2 sqrt(lambda0 lambda1 (c0 t - x + h_i)(x - h_i - c1 t)) / D)
        + theta(x, t) / D sqrt(lambda0 lambda1) ((x - c1 t)/(c0 t - x))^(1/2 - i) I1(2 sqrt(lambda0 lambda1 (c0 t - x)(x - c1 t)) / D)

    where the I0 term lives on the support shifted by h_i and the I1 term on the unshifted support.

    :return: The atom and the absolutely continuous value(s).
    """
    _check(params, start_state, t)
    if abs(params.h0 + params.h1) > 1e-12:
        raise DomainError("Bessel closed form requires h0 + h1 = 0")
    lam0, lam1 = params.intensities
    width = params.c0 - params.c1
    h = params.jumps[start_state]
    x = np.asarray(x, dtype=float)

    a, b, _ = state_times(params, x, t)
    log_theta = -(lam1 * b + lam0 * a)
    shifted_a, shifted_b, shifted_inside = state_times(params, x - h, t)
    with np.errstate(invalid='ignore'):
        log_i0_term = (log_theta + (lam0 - lam1) * h / width + math.log(params.intensities[start_state])
                       + log_bessel_i0(bessel_argument(shifted_a, shifted_b, params.intensities)))
    i0_term = np.where(shifted_inside, np.exp(log_i0_term), 0.0)

    _, _, inside = state_times(params, x, t)
    with np.errstate(invalid='ignore'):
        i1_term = np.where(inside, np.exp(log_even_sum(start_state, a, b, params.intensities)), 0.0)
    return jump_telegraph_atom(params, start_state, t), _scalar((i0_term + i1_term) / width)


def compare_bessel_with_series(params: RegimeParams, start_state: State, xs, t: float) -> float:
    """
    :return: The largest absolute difference between the closed form and the series on `xs`. Differences above
    1e-8 are logged as warnings.
    """
    _, closed = jump_telegraph_pdf_bessel(params, start_state, xs, t)
    series = jump_telegraph_pdf(params, start_state, xs, t)
    worst = float(np.max(np.abs(np.asarray(closed) - np.asarray(series))))
    if worst > MISMATCH_TOLERANCE:
        logger.warning("Bessel closed form differs from the series by %g at t=%g.", worst, t)
    return worst


def pde_residual(params: RegimeParams, start_state: State, x: float, t: float, n: int, step: float) -> float:
    """
    Central difference residual of the counting system

        (d/dt + c_i d/dx) p_i(x, t; n) = -lambda_i p_i(x, t; n) + lambda_i p_{1-i}(x - h_i, t; n - 1)

    for the jump telegraph densities. Vanishes like step^2 at interior points where the densities are smooth.
    """
    if n < 2:
        raise DomainError("The residual couples count n with n - 1 >= 1.")
    i = start_state

    def p(state: State, xx: float, tt: float, count: int) -> float:
        return jump_telegraph_pdf_n(params, state, xx, tt, count)

    time_derivative = (p(i, x, t + step, n) - p(i, x, t - step, n)) / (2 * step)
    space_derivative = (p(i, x + step, t, n) - p(i, x - step, t, n)) / (2 * step)
    rate = params.intensities[i]
    return (time_derivative + params.velocities[i] * space_derivative + rate * p(i, x, t, n)
            - rate * p(1 - i, x - params.jumps[i], t, n - 1))


@dataclasses.dataclass(frozen=True)
class TelegraphDensityQuery(object):
    """
    A density curve request: parameters, initial state, horizon and abscissae.
    """
    params: RegimeParams
    start_state: State
    t: float
    xs: np.ndarray

    def __post_init__(self):
        _check(self.params, self.start_state, self.t)

    @property
    def atom(self) -> Atom:
        return jump_telegraph_atom(self.params, self.start_state, self.t)

    def per_count(self, n: int) -> np.ndarray:
        return np.asarray(jump_telegraph_pdf_n(self.params, self.start_state, self.xs, self.t, n))

    def total(self) -> np.ndarray:
        return np.asarray(jump_telegraph_pdf(self.params, self.start_state, self.xs, self.t))

    def bessel(self) -> np.ndarray:
        return np.asarray(jump_telegraph_pdf_bessel(self.params, self.start_state, self.xs, self.t)[1])
