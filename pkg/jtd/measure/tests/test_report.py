import unittest

from jtd.model.params import AssetParams, MarketModel
from jtd.measure import report


class DescribeMeasureTestCase(unittest.TestCase):
    market = MarketModel(
        lambda0=1.0, lambda1=1.5, r0=0.05, r1=0.02,
        asset1=AssetParams(s0=100.0, c0=0.1, c1=0.05, sigma0=0.2, sigma1=0.25, h0=-0.1, h1=0.1),
        asset2=AssetParams(s0=50.0, c0=0.0, c1=0.01, sigma0=0.3, sigma1=0.1, h0=0.2, h1=0.3),
    )

    def test_complete(self):
        result = report.describe_measure(self.market, 'complete')
        self.assertEqual('unique', result.classification)
        self.assertEqual(2, len(result.residuals))
        data = result.as_dict()
        self.assertEqual({'mode', 'classification', 'shift', 'residuals'}, set(data))
        self.assertIn('lambda0_star', data['shift'])

    def test_family(self):
        result = report.describe_measure(self.market.replace(asset2=None), 'family', theta0=1.0, theta1=2.0)
        self.assertEqual('family', result.classification)
        self.assertEqual((1.0, 2.0), result.shift.lambda_star)
        self.assertEqual(1, len(result.residuals))

    def test_incomplete(self):
        similar = self.market.replace(
            asset1=AssetParams(s0=1.0, c0=0.1, c1=0.1, sigma0=0.2, sigma1=0.2),
            asset2=AssetParams(s0=1.0, c0=0.2, c1=0.2, sigma0=0.4, sigma1=0.4), r0=0.0, r1=0.0)
        result = report.describe_measure(similar, 'complete')
        self.assertEqual('incomplete', result.classification)
        self.assertIsNone(result.shift)
        self.assertEqual({'mode': 'complete', 'classification': 'incomplete',
                          'message': 'incomplete: infinitely many measures (state 0)'}, result.as_dict())

    def test_unknown_mode(self):
        with self.assertRaises(ValueError):
            report.describe_measure(self.market, 'esscher')
