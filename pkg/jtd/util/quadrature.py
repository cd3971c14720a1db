"""
Gauss–Legendre rules used by every integral over a finite interval: spending-time mixtures, the call price integral
and the count probabilities.
"""
import functools
import math
import typing

import numpy as np


# Default number of nodes of the time rules
DEFAULT_NODES = 256

Rule = typing.Tuple[np.ndarray, np.ndarray]


@functools.lru_cache(maxsize=32)
def gauss_legendre(n_nodes: int) -> Rule:
    """
    Returns the Gauss–Legendre nodes and weights on (-1, 1). The arrays are cached and read-only.

    :param n_nodes: The number of nodes.
    :return: The nodes and weights.
    """
    if n_nodes < 1:
        raise ValueError(f"A quadrature rule needs at least one node, got {n_nodes}.")

    nodes, weights = np.polynomial.legendre.leggauss(n_nodes)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def interval_rule(a: float, b: float, n_nodes: int = DEFAULT_NODES) -> Rule:
    """
    Maps the Gauss–Legendre rule to the interval (a, b).

    :param a: The lower bound.
    :param b: The upper bound.
    :param n_nodes: The number of nodes.
    :return: The nodes and weights on (a, b).
    """
    nodes, weights = gauss_legendre(n_nodes)
    half = 0.5 * (b - a)
    return a + half * (nodes + 1.0), half * weights


def sine_squared_rule(t: float, n_nodes: int = DEFAULT_NODES) -> Rule:
    """
    Rule for integrals over (0, t) of spending-time densities. The substitution tau = t sin^2(u) turns the
    sqrt(tau / (t - tau)) and sqrt((t - tau) / tau) factors at the end points into smooth functions of u, so the
    Gauss–Legendre rule in u keeps its accuracy.

    :param t: The horizon.
    :param n_nodes: The number of nodes.
    :return: The nodes tau in (0, t) and the weights including the Jacobian t sin(2u).
    """
    u, w = interval_rule(0.0, 0.5 * math.pi, n_nodes)
    return t * np.sin(u) ** 2, w * t * np.sin(2.0 * u)


def integrate(func: typing.Callable[[np.ndarray], np.ndarray], rule: Rule) -> float:
    """
    Applies a rule to a vectorised integrand. The weighted terms are reduced with numpy's pairwise summation.

    :param func: The integrand, evaluated on the array of nodes.
    :param rule: The nodes and weights.
    :return: The approximate integral.
    """
    nodes, weights = rule
    return float(np.sum(weights * func(nodes)))
