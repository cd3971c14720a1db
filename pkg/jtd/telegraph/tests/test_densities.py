import math
import unittest
from unittest import mock

import numpy as np

from jtd.errors import DomainError
from jtd.model.params import RegimeParams
from jtd.regime.counts import switch_count_probs
from jtd.regime.spending import spending_time_density
from jtd.telegraph import densities
from jtd.util.quadrature import interval_rule


def integrate_over(func, lo: float, hi: float, n_nodes: int = 256) -> float:
    x, w = interval_rule(lo, hi, n_nodes)
    return float(np.sum(w * func(x)))


class QDensityTestCase(unittest.TestCase):
    params = RegimeParams(c0=1.0, c1=-1.0, lambda0=1.0, lambda1=1.0)

    def test_one_switch_value(self):
        value = densities.q_density(self.params, 0, 0.0, 1.0, 1)
        self.assertAlmostEqual(0.5 * math.exp(-1.0), value, places=15)
        self.assertAlmostEqual(0.183940, value, places=6)

    def test_outside_support(self):
        values = densities.q_density(self.params, 0, np.array([-2.0, -1.0, 1.0, 1.5]), 1.0, 3)
        np.testing.assert_array_equal(np.zeros(4), values)

    def test_integrates_to_count_probability(self):
        params = RegimeParams(c0=0.8, c1=-0.4, lambda0=2.0, lambda1=0.5)
        t = 1.5
        probs = switch_count_probs(params, 0, t, n_max=6).probs
        for n in range(1, 7):
            with self.subTest(n=n):
                mass = integrate_over(lambda x: densities.q_density(params, 0, x, t, n), params.c1 * t, params.c0 * t)
                self.assertAlmostEqual(probs[n], mass, delta=1e-10)

    def test_rejects(self):
        with self.assertRaises(DomainError):
            densities.q_density(self.params, 0, 0.0, 1.0, 0)
        with self.assertRaises(DomainError):
            densities.q_density(RegimeParams(c0=1.0, c1=1.0), 0, 0.0, 1.0, 1)
        with self.assertRaises(DomainError):
            densities.q_density(self.params, 0, 0.0, 0.0, 1)


class JumpTelegraphTestCase(unittest.TestCase):
    params = RegimeParams(c0=1.0, c1=-0.5, h0=0.2, h1=-0.3, lambda0=1.5, lambda1=0.8)

    def test_shift(self):
        self.assertAlmostEqual(2 * 0.2 - 0.3, densities.jump_shift(self.params, 0, 3), places=15)
        self.assertAlmostEqual(2 * -0.3 + 0.2, densities.jump_shift(self.params, 1, 3), places=15)
        self.assertAlmostEqual(-0.1, densities.jump_shift(self.params, 0, 2), places=15)
        self.assertEqual(0.0, densities.jump_shift(self.params, 1, 0))

    def test_zero_jumps_match_q(self):
        params = self.params.replace(h0=0.0, h1=0.0)
        xs = np.linspace(-0.6, 1.1, 13)
        np.testing.assert_array_equal(densities.q_density(params, 1, xs, 1.0, 4),
                                      densities.jump_telegraph_pdf_n(params, 1, xs, 1.0, 4))

    def test_support(self):
        t, n = 1.0, 3
        shift = densities.jump_shift(self.params, 0, n)
        inside = densities.jump_telegraph_pdf_n(self.params, 0, 0.2 + shift, t, n)
        outside = densities.jump_telegraph_pdf_n(self.params, 0, np.array([-0.5 * t + shift - 0.01,
                                                                           t + shift + 0.01]), t, n)
        self.assertGreater(inside, 0.0)
        np.testing.assert_array_equal(np.zeros(2), outside)

    def test_normalisation(self):
        t = 2.0
        for start in (0, 1):
            atom = densities.jump_telegraph_atom(self.params, start, t)
            total = atom.weight
            for n in range(1, 40):
                shift = densities.jump_shift(self.params, start, n)
                total += integrate_over(lambda x: densities.jump_telegraph_pdf_n(self.params, start, x, t, n),
                                        self.params.c1 * t + shift, self.params.c0 * t + shift)
            self.assertAlmostEqual(1.0, total, delta=1e-8)

    def test_atom(self):
        atom = densities.jump_telegraph_atom(self.params, 1, 2.0)
        self.assertAlmostEqual(math.exp(-1.6), atom.weight, places=15)
        self.assertEqual(-1.0, atom.location)


class BesselFormTestCase(unittest.TestCase):
    def test_series_agreement(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            lam0, lam1 = rng.uniform(0.2, 4.0, 2)
            c1 = rng.uniform(-2.0, 0.5)
            c0 = c1 + rng.uniform(0.2, 2.0)
            h = rng.uniform(-0.5, 0.5)
            params = RegimeParams(c0=c0, c1=c1, h0=h, h1=-h, lambda0=lam0, lambda1=lam1)
            t = rng.uniform(0.2, 2.0)
            xs = rng.uniform(c1 * t - 0.6, c0 * t + 0.6, 10)
            for start in (0, 1):
                with self.subTest(params=params, start=start):
                    self.assertLess(densities.compare_bessel_with_series(params, start, xs, t), 1e-8)

    def test_classical_telegraph(self):
        params = RegimeParams(c0=1.0, c1=-1.0, lambda0=1.0, lambda1=1.0)
        atom, value = densities.jump_telegraph_pdf_bessel(params, 0, 0.0, 1.0)
        self.assertAlmostEqual(math.exp(-1.0), atom.weight, places=15)
        self.assertEqual(1.0, atom.location)
        # theta(0, 1) / 2 [lambda0 I0(1) + sqrt(lambda0 lambda1) I1(1)]
        self.assertAlmostEqual(0.5 * math.exp(-1.0) * (1.2660658777520082 + 0.5651591039924851), value, places=14)
        self.assertAlmostEqual(densities.jump_telegraph_pdf(params, 0, 0.0, 1.0), value, places=12)

    def test_symmetry(self):
        params = RegimeParams(c0=1.5, c1=-1.5, lambda0=0.7, lambda1=0.7)
        xs = np.linspace(0.05, 2.9, 12)
        _, left = densities.jump_telegraph_pdf_bessel(params, 0, -xs, 2.0)
        _, right = densities.jump_telegraph_pdf_bessel(params, 1, xs, 2.0)
        np.testing.assert_allclose(left, right, rtol=1e-12)
        _, mirrored = densities.jump_telegraph_pdf_bessel(params, 1, -xs, 2.0)
        _, direct = densities.jump_telegraph_pdf_bessel(params, 0, xs, 2.0)
        np.testing.assert_allclose(left + mirrored, direct + right, rtol=1e-12)

    def test_requires_cancelling_jumps(self):
        params = RegimeParams(c0=1.0, c1=-1.0, h0=0.1, h1=0.1)
        with self.assertRaisesRegex(DomainError, "Bessel closed form requires h0 \\+ h1 = 0"):
            densities.jump_telegraph_pdf_bessel(params, 0, 0.0, 1.0)

    def test_mismatch_warning(self):
        params = RegimeParams(c0=1.0, c1=-1.0, lambda0=1.0, lambda1=1.0)
        with mock.patch.object(densities, 'MISMATCH_TOLERANCE', -1.0):
            with self.assertLogs('jtd.telegraph.densities', 'WARNING'):
                densities.compare_bessel_with_series(params, 0, np.array([0.1]), 1.0)


class PdeResidualTestCase(unittest.TestCase):
    params = RegimeParams(c0=1.0, c1=-1.0, h0=0.2, h1=-0.1, lambda0=1.0, lambda1=2.0)

    def test_refinement(self):
        for start, n in ((0, 2), (1, 2), (0, 3), (1, 4)):
            with self.subTest(start=start, n=n):
                coarse = abs(densities.pde_residual(self.params, start, 0.3, 1.0, n, 1e-2))
                fine = abs(densities.pde_residual(self.params, start, 0.3, 1.0, n, 5e-3))
                self.assertLess(coarse, 1e-2)
                self.assertLess(fine, 0.3 * coarse + 1e-12)

    def test_requires_two_switches(self):
        with self.assertRaises(DomainError):
            densities.pde_residual(self.params, 0, 0.3, 1.0, 1, 1e-3)


class TelegraphDensityQueryTestCase(unittest.TestCase):
    def test_curves(self):
        params = RegimeParams(c0=1.0, c1=-1.0, lambda0=1.0, lambda1=1.0)
        query = densities.TelegraphDensityQuery(params, 0, 1.0, np.linspace(-0.9, 0.9, 7))
        np.testing.assert_allclose(query.total(), query.bessel(), atol=1e-10)
        self.assertEqual((7,), query.per_count(2).shape)
        self.assertAlmostEqual(math.exp(-1.0), query.atom.weight, places=15)

    def test_requires_order(self):
        with self.assertRaises(DomainError):
            densities.TelegraphDensityQuery(RegimeParams(c0=-1.0, c1=1.0), 0, 1.0, np.zeros(1))


class NormalisationSuiteTestCase(unittest.TestCase):
    def test_random_parameters(self):
        rng = np.random.default_rng(50)
        for _ in range(50):
            lam0, lam1 = rng.uniform(0.1, 5.0, 2)
            t = rng.uniform(0.1, 10.0 / max(lam0, lam1))
            c1 = rng.uniform(-2.0, 0.5)
            params = RegimeParams(c0=c1 + rng.uniform(0.2, 2.0), c1=c1, lambda0=lam0, lambda1=lam1)
            for start in (0, 1):
                with self.subTest(params=params, t=t, start=start):
                    dist = switch_count_probs(params, start, t)
                    self.assertLessEqual(abs(1.0 - float(np.sum(dist.probs))), dist.tail_mass + 1e-10)

                    density = spending_time_density(params, start, t)
                    self.assertAlmostEqual(1.0, density.total_mass(), delta=1e-8)

                    for n in range(1, min(dist.n_max, 6) + 1):
                        mass = integrate_over(lambda x: densities.q_density(params, start, x, t, n),
                                              params.c1 * t, params.c0 * t)
                        self.assertAlmostEqual(dist.probs[n], mass, delta=1e-8)
