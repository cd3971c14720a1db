"""
Log-space kernels shared by the spending-time densities, the telegraph densities and the pricer.

All kernels are written in terms of the time `a` spent in state 0 and the time `b` spent in state 1. The spending-time
density of state 0 over a horizon t uses (a, b) = (tau, t - tau); the telegraph densities substitute
a = (x - c1 t)/(c0 - c1) and b = (c0 t - x)/(c0 - c1).
"""
import typing

import numpy as np
from scipy import special

from jtd.model.params import State
from jtd.regime.bessel import log_bessel_i0, log_bessel_i1_ratio


Intensities = typing.Tuple[float, float]


def _times(start_state: State, a, b) -> typing.Tuple[np.ndarray, np.ndarray]:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return (a, b) if start_state == 0 else (b, a)


def log_count_kernel(start_state: State, n, a, b, intensities: Intensities) -> np.ndarray:
    """
    Logarithm of the spending-time density conditioned on exactly n switches, as a function of the times spent in
    each state. For a start in state 0 and n = 2k this is

        lambda0^k lambda1^k b^(k-1) a^k / ((k-1)! k!) exp(-lambda0 a - lambda1 b)

    and for n = 2k + 1 the power of lambda0 and the factorial (k-1)! both gain one. A start in state 1 swaps the roles
    of the states. Powers of zero follow the 0^0 = 1 convention.

    :param start_state: The initial state.
    :param n: The number of switches, at least 1. Arrays broadcast against `a` and `b`.
    :param a: Time(s) spent in state 0.
    :param b: Time(s) spent in state 1.
    :param intensities: The switching intensities (lambda0, lambda1).
    :return: The log density; minus infinity where the density vanishes.
    """
    n = np.asarray(n, dtype=np.int64)
    k = n // 2
    odd = n % 2
    even = 1 - odd
    own, other = _times(start_state, a, b)
    log_own = np.log(intensities[start_state])
    log_other = np.log(intensities[1 - start_state])
    with np.errstate(divide='ignore', invalid='ignore'):
        value = (
            (k + odd) * log_own + k * log_other
            + special.xlogy(k, own) + special.xlogy(k - even, other)
            - special.gammaln(k + odd) - special.gammaln(k + 1)
            - intensities[0] * np.asarray(a, dtype=float) - intensities[1] * np.asarray(b, dtype=float)
        )
    return value


def bessel_argument(a, b, intensities: Intensities) -> np.ndarray:
    """
    :return: 2 sqrt(lambda0 lambda1 a b).
    """
    product = np.clip(np.asarray(a, dtype=float) * np.asarray(b, dtype=float), 0.0, None)
    return 2.0 * np.sqrt(intensities[0] * intensities[1] * product)


def log_odd_sum(start_state: State, a, b, intensities: Intensities) -> np.ndarray:
    """
    Logarithm of the sum of the count kernels over all odd switch counts, lambda_i I0(z) exp(-lambda0 a - lambda1 b).
    """
    z = bessel_argument(a, b, intensities)
    return (np.log(intensities[start_state]) + log_bessel_i0(z)
            - intensities[0] * np.asarray(a, dtype=float) - intensities[1] * np.asarray(b, dtype=float))


def log_even_sum(start_state: State, a, b, intensities: Intensities) -> np.ndarray:
    """
    Logarithm of the sum of the count kernels over all even switch counts n >= 2,

        sqrt(lambda0 lambda1) sqrt(own / other) I1(z) exp(-lambda0 a - lambda1 b)

    written as lambda0 lambda1 own (2 I1(z) / z) exp(...) so both end points are regular.
    """
    z = bessel_argument(a, b, intensities)
    own, _ = _times(start_state, a, b)
    with np.errstate(divide='ignore'):
        return (np.log(intensities[0] * intensities[1]) + np.log(np.clip(own, 0.0, None)) + log_bessel_i1_ratio(z)
                - intensities[0] * np.asarray(a, dtype=float) - intensities[1] * np.asarray(b, dtype=float))


def log_bessel_kernel(start_state: State, a, b, intensities: Intensities) -> np.ndarray:
    """
    Logarithm of the count kernel summed over all n >= 1 (the absolutely continuous part of the spending-time law).
    """
    return np.logaddexp(log_odd_sum(start_state, a, b, intensities), log_even_sum(start_state, a, b, intensities))
