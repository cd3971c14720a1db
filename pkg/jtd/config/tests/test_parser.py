import io
import json
import os
import unittest

from jtd.config import ConfigError, ConfigParser, RunControls
from jtd.model.params import AssetParams, MarketModel

CONFIGS = os.path.join(os.path.dirname(__file__), '..', '..', '..', 'configs')

DOCUMENT = {
    'switching': {'lambda0': 2.0, 'lambda1': 0.5},
    'rates': {'r0': 0.05, 'r1': 0.05},
    'assets': [{'s0': 100.0, 'c0': 0.1, 'c1': 0.1, 'sigma0': 0.2, 'sigma1': 0.2}],
}


def document(**changes):
    data = json.loads(json.dumps(DOCUMENT))
    data.update(changes)
    return data


class ParseTestCase(unittest.TestCase):
    def setUp(self):
        self.parser = ConfigParser()

    def parse(self, data) -> object:
        return self.parser.parse_str(json.dumps(data))

    def test_json(self):
        market, measure, controls = self.parse(DOCUMENT)
        expected = MarketModel(lambda0=2.0, lambda1=0.5, r0=0.05, r1=0.05,
                               asset1=AssetParams(s0=100.0, c0=0.1, c1=0.1, sigma0=0.2, sigma1=0.2))
        self.assertEqual(expected, market)
        self.assertIsNone(measure)
        self.assertEqual(RunControls(tolerance=1e-12, quadrature_nodes=256, max_terms=400, seed=20080101,
                                     n_paths=100000, chunk_size=50000, start_state=0), controls)

    def test_yaml(self):
        text = "switching: {lambda0: 1, lambda1: 3}\nassets:\n  - {s0: 1, c0: 1, c1: -1, h0: 0.5}\n"
        config = self.parser.parse_str(text)
        self.assertEqual((1.0, 3.0), config.market.intensities)
        self.assertEqual((0.5, 0.0), config.market.asset1.jumps)
        self.assertEqual((0.0, 0.0), config.market.rates)

    def test_stream(self):
        config = self.parser.parse_stream(io.StringIO(json.dumps(DOCUMENT)))
        self.assertEqual(100.0, config.market.asset1.s0)

    def test_two_assets(self):
        assets = DOCUMENT['assets'] + [{'s0': 20.0, 'c0': 0.0, 'c1': 0.1, 'h0': 0.1, 'h1': 0.2}]
        market = self.parse(document(assets=assets)).market
        self.assertTrue(market.is_two_asset)
        self.assertEqual((0.1, 0.2), market.asset2.jumps)

    def test_invariants_not_checked(self):
        assets = [dict(DOCUMENT['assets'][0], h0=-2.0)]
        self.assertEqual(-2.0, self.parse(document(assets=assets)).market.asset1.h0)

    def test_unknown_key(self):
        assets = [dict(DOCUMENT['assets'][0], sigma2=0.1)]
        with self.assertRaisesRegex(ConfigError, r"assets\[0\]\.sigma2: unknown key") as cm:
            self.parse(document(assets=assets))
        self.assertEqual('assets[0].sigma2', cm.exception.path)
        with self.assertRaisesRegex(ConfigError, "^volatility: unknown key"):
            self.parse(document(volatility=0.2))
        with self.assertRaisesRegex(ConfigError, r"controls\.threads: unknown key"):
            self.parse(document(controls={'threads': 4}))

    def test_missing_key(self):
        data = document()
        del data['switching']
        with self.assertRaisesRegex(ConfigError, "switching: missing required key"):
            self.parse(data)
        with self.assertRaisesRegex(ConfigError, r"assets\[0\]\.c1: missing required key"):
            self.parse(document(assets=[{'s0': 1.0, 'c0': 0.1}]))

    def test_types(self):
        with self.assertRaisesRegex(ConfigError, r"switching\.lambda0: expected a number"):
            self.parse(document(switching={'lambda0': 'fast', 'lambda1': 1.0}))
        with self.assertRaisesRegex(ConfigError, r"switching\.lambda1: expected a number"):
            self.parse(document(switching={'lambda0': 1.0, 'lambda1': True}))
        with self.assertRaisesRegex(ConfigError, "assets: expected a list"):
            self.parse(document(assets=[]))
        with self.assertRaisesRegex(ConfigError, "configuration: expected a mapping"):
            self.parser.parse_str("[1, 2, 3]")

    def test_malformed(self):
        with self.assertRaisesRegex(ConfigError, "malformed configuration"):
            self.parser.parse_str("{switching: [")

    def test_controls(self):
        config = self.parse(document(controls={'seed': 7, 'tolerance': 1e-10}))
        self.assertEqual(7, config.controls.seed)
        self.assertEqual(1e-10, config.controls.tolerance)
        self.assertEqual(256, config.controls.quadrature_nodes)
        flagged = config.controls_with(seed=11, n_paths=None)
        self.assertEqual(11, flagged.seed)
        self.assertEqual(100000, flagged.n_paths)
        self.assertEqual(7, config.controls.seed)

    def test_invalid_controls(self):
        with self.assertRaisesRegex(ConfigError, r"controls\.n_paths: expected an integer"):
            self.parse(document(controls={'n_paths': 1.5}))
        with self.assertRaisesRegex(ConfigError, r"controls\.chunk_size: expected a positive value"):
            self.parse(document(controls={'chunk_size': 0}))
        with self.assertRaisesRegex(ConfigError, r"controls\.start_state: expected 0 or 1"):
            self.parse(document(controls={'start_state': 2}))

    def test_measures(self):
        family = self.parse(document(measure={'theta0': 1.0, 'theta1': 2.0})).measure
        self.assertEqual('family', family.mode)
        shift = family.resolve(self.parse(DOCUMENT).market)
        self.assertEqual((1.0, 2.0), shift.lambda_star)

        explicit = self.parse(document(measure={'c0_star': 0.5, 'c1_star': -0.25, 'sigma0_star': 0.1,
                                                'sigma1_star': 0.0})).measure
        self.assertEqual('explicit', explicit.mode)
        shift = explicit.resolve(self.parse(DOCUMENT).market)
        self.assertEqual((1.5, 0.75), shift.lambda_star)
        self.assertEqual((0.1, 0.0), shift.sigma_star)

        self.assertEqual('change-of-state', self.parse(document(measure={'k0': 0.1, 'k1': 0.2})).measure.mode)

    def test_ambiguous_measure(self):
        with self.assertRaisesRegex(ConfigError, "measure: expected exactly one of"):
            self.parse(document(measure={'theta0': 1.0, 'k1': 0.2}))

    def test_missing_file(self):
        with self.assertRaisesRegex(ConfigError, "cannot read"):
            self.parser.parse_file(os.path.join(CONFIGS, 'missing.json'))

    def test_sample_files(self):
        for name in sorted(os.listdir(CONFIGS)):
            with self.subTest(name=name):
                config = self.parser.parse_file(os.path.join(CONFIGS, name))
                self.assertGreaterEqual(len(config.market.assets), 1)
