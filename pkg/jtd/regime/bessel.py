"""
Modified Bessel functions of the first kind of orders 0 and 1 for real nonnegative arguments.

The values are assembled from the exponentially scaled functions of `scipy.special`, so densities can work in log space
and only exponentiate the final result.
"""
import numpy as np
from scipy import special

from jtd.errors import DomainError


ArrayLike = np.ndarray


def _check_argument(z) -> np.ndarray:
    z = np.asarray(z, dtype=float)
    if np.any(z < 0) or np.any(np.isnan(z)):
        raise DomainError("Bessel functions are evaluated for real nonnegative arguments only.")
    return z


def _scalar(value: np.ndarray):
    return float(value) if np.ndim(value) == 0 else value


def log_bessel_i0(z) -> ArrayLike:
    """
    :param z: Nonnegative argument(s).
    :return: log I0(z), finite for every finite argument.
    """
    z = _check_argument(z)
    return _scalar(np.log(special.i0e(z)) + z)


def log_bessel_i1(z) -> ArrayLike:
    """
    :param z: Nonnegative argument(s).
    :return: log I1(z); minus infinity at zero.
    """
    z = _check_argument(z)
    with np.errstate(divide='ignore'):
        return _scalar(np.log(special.i1e(z)) + z)


def log_bessel_i1_ratio(z) -> ArrayLike:
    """
    Logarithm of 2 I1(z) / z, which tends to 1 at zero. Used where I1 is divided by its argument, e.g. the
    sqrt(tau / (t - tau)) I1 term of the spending-time density, so the end points need no special casing.

    :param z: Nonnegative argument(s).
    :return: log(2 I1(z) / z).
    """
    z = _check_argument(z)
    positive = z > 0
    safe = np.where(positive, z, 1.0)
    with np.errstate(divide='ignore'):
        value = np.log(special.i1e(safe)) + safe - np.log(0.5 * safe)
    return _scalar(np.where(positive, value, 0.0))


def _exponentiate(log_value, z) -> ArrayLike:
    with np.errstate(over='ignore'):
        value = np.exp(log_value)
    if np.any(np.isinf(value)):
        raise OverflowError(f"Bessel function overflows for argument {np.max(z)}.")
    return _scalar(value)


def bessel_i0(z) -> ArrayLike:
    """
    Modified Bessel function I0(z) = sum (z/2)^(2n) / (n!)^2.

    :param z: Nonnegative argument(s).
    :return: I0(z).
    """
    return _exponentiate(log_bessel_i0(z), z)


def bessel_i1(z) -> ArrayLike:
    """
    Modified Bessel function I1 = I0'.

    :param z: Nonnegative argument(s).
    :return: I1(z).
    """
    with np.errstate(divide='ignore'):
        return _exponentiate(log_bessel_i1(z), z)
