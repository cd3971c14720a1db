import io
import math
import os
import unittest
from unittest import mock

import numpy as np
from scipy import integrate, stats

from jtd.errors import DomainError
from jtd.measure.girsanov import radon_nikodym_eval
from jtd.model.params import AssetParams, MarketModel, MeasureShift, RegimeParams
from jtd.montecarlo import paths
from jtd.regime.counts import switch_count_probs
from jtd.telegraph.densities import jump_telegraph_pdf


MARKET = MarketModel(
    lambda0=2.0, lambda1=1.0, r0=0.03, r1=0.01,
    asset1=AssetParams(s0=100.0, c0=0.1, c1=-0.05, sigma0=0.2, sigma1=0.3, h0=-0.1, h1=0.05),
    asset2=AssetParams(s0=20.0, c0=0.0, c1=0.02, sigma0=0.1, sigma1=0.4, h0=0.2, h1=-0.2),
)


class ChunkingTestCase(unittest.TestCase):
    def test_sizes(self):
        self.assertEqual([4, 4, 2], paths.chunk_sizes(10, 4))
        self.assertEqual([10], paths.chunk_sizes(10, 50))
        with self.assertRaises(DomainError):
            paths.chunk_sizes(0, 10)

    def test_thread_count(self):
        with mock.patch.dict(os.environ, {'JTD_THREADS': '3'}):
            self.assertEqual(3, paths.thread_count())
        with mock.patch.dict(os.environ, {'JTD_THREADS': 'many'}):
            with self.assertLogs('jtd.montecarlo.paths', 'WARNING'):
                self.assertGreaterEqual(paths.thread_count(), 1)


class SimulateBatchesTestCase(unittest.TestCase):
    def test_deterministic_across_threads(self):
        single = list(paths.simulate_batches(MARKET, 1.0, 25000, 99, chunk_size=10000, threads=1))
        pooled = list(paths.simulate_batches(MARKET, 1.0, 25000, 99, chunk_size=10000, threads=4))
        self.assertEqual([10000, 10000, 5000], [b.n_paths for b in single])
        for a, b in zip(single, pooled):
            np.testing.assert_array_equal(a.occupation0, b.occupation0)
            np.testing.assert_array_equal(a.brownian, b.brownian)
            np.testing.assert_array_equal(a.leaving, b.leaving)

    def test_seed_changes_draws(self):
        a = next(paths.simulate_batches(MARKET, 1.0, 1000, 1))
        b = next(paths.simulate_batches(MARKET, 1.0, 1000, 2))
        self.assertFalse(np.array_equal(a.occupation0, b.occupation0))

    def test_deterministic_exponential(self):
        market = MarketModel(lambda0=1e-9, lambda1=1e-9, asset1=AssetParams(s0=10.0, c0=0.07, c1=-0.2))
        batch = next(paths.simulate_batches(market, 2.0, 10000, 5))
        np.testing.assert_allclose(batch.prices(market.asset1), 10.0 * math.exp(0.14), rtol=1e-14)

    def test_statistics(self):
        batch = next(paths.simulate_batches(MARKET, 1.5, 5000, 8, start_state=1))
        self.assertTrue(np.all((batch.occupation0 >= 0) & (batch.occupation0 <= 1.5)))
        np.testing.assert_array_equal(batch.terminal_state, (1 + batch.switch_counts) % 2)
        self.assertTrue(np.all(batch.leaving[1] - batch.leaving[0] >= 0))
        self.assertTrue(np.all(batch.leaving[1] - batch.leaving[0] <= 1))

    def test_switch_count_distribution(self):
        size = 100000
        batch = next(paths.simulate_batches(MARKET, 2.0, size, 20080101, chunk_size=size))
        dist = switch_count_probs(MARKET.regime(1), 0, 2.0)
        counts = batch.switch_counts
        expected = dist.probs * size
        last = int(np.flatnonzero(expected >= 5)[-1])
        observed = np.bincount(counts, minlength=last + 1)
        observed = np.append(observed[:last], observed[last:].sum())
        expected = np.append(expected[:last], size - expected[:last].sum())
        self.assertGreater(stats.chisquare(observed, expected)[1], 0.001)

    def test_telegraph_histogram(self):
        market = MarketModel(lambda0=1.0, lambda1=1.5, asset1=AssetParams(s0=1.0, c0=1.0, c1=-1.0))
        size = 100000
        batch = next(paths.simulate_batches(market, 1.0, size, 31, chunk_size=size))
        switched = batch.telegraph(market.asset1.velocities)[batch.switch_counts > 0]
        bins = np.linspace(-1.0, 1.0, 21)
        observed, _ = np.histogram(switched, bins=bins)
        params = market.regime(1)
        for lo, hi, count in zip(bins[:-1], bins[1:], observed):
            expected, _ = integrate.quad(lambda x: jump_telegraph_pdf(params, 0, x, 1.0), lo, hi)
            self.assertLess(abs(count / size - expected), 5 * math.sqrt(expected * (1 - expected) / size) + 1e-12)

    def test_rejects(self):
        with self.assertRaises(DomainError):
            next(paths.simulate_batches(MARKET, -1.0, 10, 1))


class SimulatePathsTestCase(unittest.TestCase):
    shift = MeasureShift.from_drifts(MARKET.intensities, (0.5, -0.4), (0.3, -0.2))

    def test_records_match_batches(self):
        records = list(paths.simulate_paths(MARKET, None, 0, 1.0, 300, 17, chunk_size=128))
        batches = list(paths.simulate_batches(MARKET, 1.0, 300, 17, chunk_size=128, threads=1))
        self.assertEqual(300, len(records))
        growth = np.concatenate([b.log_growth(MARKET.asset2) for b in batches])
        counts = np.concatenate([b.switch_counts for b in batches])
        for k, record in enumerate(records):
            self.assertEqual(counts[k], len(record.switch_times))
            self.assertAlmostEqual(growth[k], record.log_stock_terminal[1], places=12)

    def test_record_invariants(self):
        for record in paths.simulate_paths(MARKET, self.shift, 1, 2.0, 200, 3):
            self.assertAlmostEqual(2.0, sum(record.durations), places=12)
            self.assertEqual(1, record.regimes[0])
            self.assertTrue(all(a != b for a, b in zip(record.regimes, record.regimes[1:])))
            self.assertTrue(all(a < b for a, b in zip(record.switch_times, record.switch_times[1:])))
            self.assertGreater(record.bond_terminal, 0.0)
            self.assertTrue(all(k > 0 for k in record.jump_product))
            self.assertEqual(len(record.regimes), len(record.gaussians))

    def test_density_along_records(self):
        records = list(paths.simulate_paths(MARKET, None, 0, 1.0, 200, 23))
        batch = next(paths.simulate_batches(MARKET, 1.0, 200, 23))
        densities = np.exp(batch.log_density(self.shift))
        for record, expected in zip(records, densities):
            self.assertAlmostEqual(1.0, radon_nikodym_eval(self.shift, record, 1.0) / expected, places=12)

    def test_identity_density(self):
        for record in paths.simulate_paths(MARKET, None, 0, 1.0, 50, 4):
            self.assertEqual(1.0, radon_nikodym_eval(MeasureShift.identity(MARKET.intensities), record))

    def test_dump(self):
        records = list(paths.simulate_paths(MARKET, None, 0, 1.0, 20, 9))
        stream = io.StringIO()
        self.assertEqual(20, paths.write_path_dump(records, stream))
        lines = stream.getvalue().splitlines()
        self.assertEqual('path,segment,start,end,regime,gaussian', lines[0])
        self.assertEqual(sum(len(r.regimes) for r in records), len(lines) - 1)
        first = lines[1].split(',')
        self.assertEqual(['0', '0', '0'], first[:3])
        self.assertEqual(records[0].regimes[0], int(first[4]))
