"""
Densities of the telegraph process with a regime-switching Brownian component, obtained by mixing Gaussians over the
spending-time law.
"""
import logging
import math
import typing

import numpy as np

from jtd.errors import DomainError
from jtd.model.params import Atom, RegimeParams, State, check_state
from jtd.regime.counts import truncation_order
from jtd.regime.kernels import log_bessel_kernel, log_count_kernel
from jtd.telegraph.densities import jump_shift, jump_telegraph_pdf
from jtd.util.quadrature import DEFAULT_NODES, sine_squared_rule

logger = logging.getLogger(__name__)

_LOG_SQRT_2PI = 0.5 * math.log(2 * math.pi)


def _scalar(value: np.ndarray):
    return float(value) if np.ndim(value) == 0 else value


def _gaussian(x: np.ndarray, mean, variance) -> np.ndarray:
    variance = np.asarray(variance, dtype=float)
    return np.exp(-0.5 * (x - mean) ** 2 / variance - 0.5 * np.log(variance) - _LOG_SQRT_2PI)


def _check(params: RegimeParams, start_state: State, t: float) -> None:
    check_state(start_state)
    if not t > 0:
        raise DomainError(f"Densities need a positive horizon, got {t}.")


def _moments(params: RegimeParams, t: float, tau: np.ndarray) -> typing.Tuple[np.ndarray, np.ndarray]:
    mean = params.c0 * tau + params.c1 * (t - tau)
    variance = params.sigma0 ** 2 * tau + params.sigma1 ** 2 * (t - tau)
    return mean, variance


def _atom_term(params: RegimeParams, start_state: State, x: np.ndarray, t: float, shift: float = 0.0) -> np.ndarray:
    sigma = params.volatilities[start_state]
    if sigma == 0:
        return np.zeros_like(x)
    weight = math.exp(-params.intensities[start_state] * t)
    return weight * _gaussian(x, params.velocities[start_state] * t + shift, sigma ** 2 * t)


def _is_pure_telegraph(params: RegimeParams) -> bool:
    return params.sigma0 == 0 and params.sigma1 == 0


def telegraph_diffusion_point_mass(params: RegimeParams, start_state: State, t: float) -> typing.Optional[Atom]:
    """
    :return: The point mass of the telegraph-diffusion variable, present only when the initial state has no
    volatility; paths that never switch then end exactly at c_i t.
    """
    _check(params, start_state, t)
    if params.volatilities[start_state] != 0:
        return None
    return Atom(weight=math.exp(-params.intensities[start_state] * t), location=params.velocities[start_state] * t)


def telegraph_diffusion_pdf(params: RegimeParams, start_state: State, x, t: float, n_nodes: int = DEFAULT_NODES):
    """
    Density of c0 T0 + c1 T1 + sigma0 W(T0) + sigma1 W'(T1): the Gaussian N(a_tau, Sigma_tau^2) with
    a_tau = c0 tau + c1 (t - tau) and Sigma_tau^2 = sigma0^2 tau + sigma1^2 (t - tau), mixed over the law of tau. The
    point mass of tau contributes one Gaussian evaluated analytically. Without volatility the pure telegraph density
    is returned instead.
    """
    _check(params, start_state, t)
    x = np.asarray(x, dtype=float)
    if _is_pure_telegraph(params):
        logger.debug("No volatility: falling back to the telegraph density.")
        return jump_telegraph_pdf(params.replace(h0=0.0, h1=0.0), start_state, x, t)

    tau, weights = sine_squared_rule(t, n_nodes)
    mixing = weights * np.exp(log_bessel_kernel(start_state, tau, t - tau, params.intensities))
    mean, variance = _moments(params, t, tau)
    kernel = _gaussian(x[..., np.newaxis], mean, variance)
    return _scalar(np.sum(kernel * mixing, axis=-1) + _atom_term(params, start_state, x, t))


def jtd_pdf(params: RegimeParams, start_state: State, x, t: float, n_nodes: int = DEFAULT_NODES,
            n_max: typing.Optional[int] = None):
    """
    Density of the full variable X = T + J + D, the telegraph part, the accumulated jumps and the Brownian part.
    Conditioned on n switches the jumps add the constant j_i(n), so the density is the per-count Gaussian mixture
    shifted by j_i(n), summed over n.
    """
    _check(params, start_state, t)
    x = np.asarray(x, dtype=float)
    if _is_pure_telegraph(params):
        return jump_telegraph_pdf(params, start_state, x, t, n_max)
    if n_max is None:
        n_max = max(1, truncation_order(max(params.intensities), t))

    tau, weights = sine_squared_rule(t, n_nodes)
    mean, variance = _moments(params, t, tau)
    counts = np.arange(1, n_max + 1)[:, np.newaxis]
    mixing = weights * np.exp(log_count_kernel(start_state, counts, tau, t - tau, params.intensities))
    total = _atom_term(params, start_state, x, t)
    for n in range(1, n_max + 1):
        kernel = _gaussian(x[..., np.newaxis], mean + jump_shift(params, start_state, n), variance)
        total = total + np.sum(kernel * mixing[n - 1], axis=-1)
    logger.debug("Jump telegraph-diffusion density with %d counts and %d nodes.", n_max, n_nodes)
    return _scalar(total)
