import numpy as np
from scipy import special

from jtd.errors import DomainError


def bs_kernel(x, strike, sigma):
    """
    The Black-Scholes function phi(x, K, sigma) = x F(d+) - K F(d-) with d+- = (log(x/K) +- sigma^2/2) / sigma and F
    the standard normal distribution function. It equals E[x exp(Z - sigma^2/2) - K]^+ for Z ~ N(0, sigma^2); for
    sigma = 0 it is (x - K)^+.

    :param x: Positive spot value(s).
    :param strike: Nonnegative strike value(s).
    :param sigma: Nonnegative total volatility (volatility times the square root of time).
    :return: The value(s), broadcast over the arguments.
    """
    x, strike, sigma = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (x, strike, sigma)))
    if np.any(x <= 0) or np.any(strike < 0) or np.any(sigma < 0):
        raise DomainError("The Black-Scholes function needs x > 0, K >= 0 and sigma >= 0.")
    positive = sigma > 0
    safe_sigma = np.where(positive, sigma, 1.0)
    with np.errstate(divide='ignore'):
        d_plus = (np.log(x) - np.log(strike) + 0.5 * safe_sigma ** 2) / safe_sigma
    smooth = x * special.ndtr(d_plus) - strike * special.ndtr(d_plus - safe_sigma)
    value = np.where(positive, np.clip(smooth, 0.0, None), np.clip(x - strike, 0.0, None))
    return float(value) if value.ndim == 0 else value
