"""
Path functionals evaluated on simulated batches. Each functional is registered by key so that the command line and
the estimators can look them up by name.
"""
import numpy as np

from jtd.model.params import MarketModel
from jtd.montecarlo.paths import PathBatch
from jtd.util.registry import KeyRegistry


functionals = KeyRegistry()


class Functional(object):
    """
    Base class for path functionals.
    """
    key: str = ''
    name: str = ''
    description: str = ''

    def __init__(self, asset: int = 1):
        self.asset = asset

    def __call__(self, batch: PathBatch, market: MarketModel) -> np.ndarray:
        """
        :param batch: The simulated paths.
        :param market: The parameters the paths were simulated with.
        :return: One value per path.
        """
        raise NotImplementedError

    def __repr__(self):
        return f"<{self.__class__.__name__} {self.key}>"

    @staticmethod
    def discount(batch: PathBatch, market: MarketModel) -> np.ndarray:
        return np.exp(-batch.log_bond(market.rates))


@functionals.register
class One(Functional):
    key = 'one'
    name = "One"
    description = "The constant 1; weighted by a density it estimates the total mass."

    def __call__(self, batch, market):
        return np.ones(batch.n_paths)


@functionals.register
class DiscountedAsset(Functional):
    key = 'identity'
    name = "Discounted asset"
    description = "The asset price at the horizon divided by the bond."

    def __call__(self, batch, market):
        return self.discount(batch, market) * batch.prices(market.asset(self.asset))


@functionals.register
class DiscountedCall(Functional):
    key = 'call'
    name = "Discounted call"
    description = "The call payoff (S(T) - K)^+ divided by the bond."

    def __init__(self, strike: float, asset: int = 1):
        super(DiscountedCall, self).__init__(asset)
        self.strike = strike

    def __call__(self, batch, market):
        payoff = np.maximum(batch.prices(market.asset(self.asset)) - self.strike, 0.0)
        return self.discount(batch, market) * payoff


@functionals.register
class SwitchCount(Functional):
    key = 'switch_count'
    name = "Switch count indicator"
    description = "1 when the path switched exactly n times."

    def __init__(self, n: int, asset: int = 1):
        super(SwitchCount, self).__init__(asset)
        self.n = n

    def __call__(self, batch, market):
        return (batch.switch_counts == self.n).astype(float)


@functionals.register
class JumpTelegraphDiffusion(Functional):
    key = 'jtd'
    name = "Jump telegraph-diffusion"
    description = "The sum of the telegraph, jump and Brownian parts."

    def __call__(self, batch, market):
        asset = market.asset(self.asset)
        return batch.telegraph(asset.velocities) + batch.jumps(asset.jumps) + batch.diffusion(asset.volatilities)


@functionals.register
class Exponential(Functional):
    key = 'exponential'
    name = "Exponential"
    description = "exp(telegraph + Brownian part) times the product of 1 + h over the jumps."

    def __call__(self, batch, market):
        asset = market.asset(self.asset)
        return np.exp(batch.telegraph(asset.velocities) + batch.diffusion(asset.volatilities)
                      + batch.log_jump_product(asset.jumps))


def create(key: str, **options) -> Functional:
    """
    :param key: The key of a registered functional.
    :param options: Constructor arguments, e.g. `strike` for `call`.
    :return: The functional.
    """
    return functionals.get(key)(**options)
