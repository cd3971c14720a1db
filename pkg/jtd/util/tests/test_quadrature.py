import math
import unittest

import numpy as np

from jtd.util.quadrature import gauss_legendre, integrate, interval_rule, sine_squared_rule


class QuadratureTestCase(unittest.TestCase):
    """
    Tests for the Gauss–Legendre rules.
    """

    def test_polynomial_exactness(self):
        """A rule with n nodes integrates polynomials of degree 2n - 1 exactly."""
        rule = interval_rule(-1.0, 2.0, 8)
        self.assertAlmostEqual((2.0 ** 16 - 1.0) / 16.0, integrate(lambda x: x ** 15, rule), places=8)

    def test_cached_nodes_are_read_only(self):
        nodes, weights = gauss_legendre(16)
        self.assertIs(nodes, gauss_legendre(16)[0])
        with self.assertRaises(ValueError):
            nodes[0] = 0.0
        self.assertAlmostEqual(2.0, float(np.sum(weights)), places=14)

    def test_invalid_node_count(self):
        with self.assertRaises(ValueError):
            gauss_legendre(0)

    def test_sine_squared_endpoint_singularity(self):
        """The substitution integrates the arcsine density 1 / (pi sqrt(tau (t - tau))) to one."""
        t = 2.5
        rule = sine_squared_rule(t, 32)
        value = integrate(lambda tau: 1.0 / (math.pi * np.sqrt(tau * (t - tau))), rule)
        self.assertAlmostEqual(1.0, value, places=12)

    def test_sine_squared_nodes_inside_interval(self):
        tau, weights = sine_squared_rule(1.0, 256)
        self.assertTrue(np.all(tau > 0.0))
        self.assertTrue(np.all(tau < 1.0))
        self.assertAlmostEqual(1.0, float(np.sum(weights)), places=13)
