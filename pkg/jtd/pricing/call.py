"""
European call prices in the regime-switching market by conditioning on the switch count and the time spent in state 0.
"""
import dataclasses
import logging
import math
import typing

import numpy as np
from scipy import stats

from jtd.errors import DomainError, MeasureError, ToleranceError
from jtd.measure.completion import complete_two_asset_measure
from jtd.measure.girsanov import check_equivalent
from jtd.model.params import MarketModel, MeasureShift, State, check_state
from jtd.pricing.kernel import bs_kernel
from jtd.regime.kernels import log_bessel_kernel, log_count_kernel
from jtd.util.quadrature import DEFAULT_NODES, sine_squared_rule

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class CallPricingRequest(object):
    """
    A call on asset 1 with strike K and maturity T, for a market starting in `start_state`. Without an explicit
    `shift` the market must have two assets, and the measure comes from completing it.
    """
    market: MarketModel
    strike: float
    maturity: float
    start_state: State = 0
    shift: typing.Optional[MeasureShift] = None
    tolerance: float = 1e-12
    quadrature_nodes: int = DEFAULT_NODES
    max_terms: int = 400

    def __post_init__(self):
        if not self.strike > 0:
            raise DomainError(f"The strike must be positive, got {self.strike}.")
        if not self.maturity > 0:
            raise DomainError(f"The maturity must be positive, got {self.maturity}.")
        check_state(self.start_state)

    def replace(self, **changes) -> "CallPricingRequest":
        return dataclasses.replace(self, **changes)


@dataclasses.dataclass(frozen=True)
class PricingBreakdown(object):
    price: float
    atom_contribution: float
    per_n_contributions: np.ndarray
    truncation_bound: float
    quadrature_nodes_used: int
    n_max: int
    shift: MeasureShift

    def as_dict(self) -> typing.Dict[str, typing.Any]:
        return {
            'price': self.price,
            'atom_contribution': self.atom_contribution,
            'per_n_contributions': [float(v) for v in self.per_n_contributions],
            'truncation_bound': self.truncation_bound,
            'quadrature_nodes_used': self.quadrature_nodes_used,
            'n_max': self.n_max,
            'shift': self.shift.as_dict(),
        }


def resolve_shift(req: CallPricingRequest) -> MeasureShift:
    """
    :return: The explicit shift of the request, or the measure completing a two-asset market.
    """
    if req.shift is not None:
        check_equivalent(req.shift)
        return req.shift
    if not req.market.is_two_asset:
        raise MeasureError("A one-asset market has many risk-neutral measures; pass an explicit shift.")
    return complete_two_asset_measure(req.market)


def _volatilities(req: CallPricingRequest) -> typing.Tuple[float, float]:
    sigmas = req.market.asset1.volatilities
    if sigmas == (0.0, 0.0):
        raise DomainError("Call prices need a diffusion component: sigma0 = sigma1 = 0 is not supported.")
    return sigmas


def _atom(req: CallPricingRequest, lambda_star: typing.Tuple[float, float], drifts: typing.Tuple[float, float],
          sigmas: typing.Tuple[float, float]) -> float:
    i, maturity = req.start_state, req.maturity
    weight = math.exp(-lambda_star[i] * maturity)
    spot = req.market.asset1.s0 * math.exp(drifts[i] * maturity)
    strike = req.strike * math.exp(-req.market.rates[i] * maturity)
    return weight * bs_kernel(spot, strike, sigmas[i] * math.sqrt(maturity))


def truncation_envelope(s0: float, maturity: float, drifts: typing.Tuple[float, float],
                        jumps: typing.Tuple[float, float], rate: float, n_max: int) -> float:
    """
    Bound on the price contribution of paths with more than `n_max` switches. With kappa = max(1, 1 + h0, 1 + h1)
    the spot after n switches is below s0 kappa^n exp(max(c~) T), phi(x, K, sigma) <= x, and switch counts are
    dominated by Poisson(rate T), which gives

        s0 exp(max(c~) T) exp(rate T (kappa - 1)) P[Poisson(kappa rate T) > n_max].
    """
    kappa = max(1.0, 1.0 + jumps[0], 1.0 + jumps[1])
    mean = rate * maturity
    return (s0 * math.exp(max(drifts) * maturity + mean * (kappa - 1.0))
            * float(stats.poisson.sf(n_max, kappa * mean)))


def _series_order(req: CallPricingRequest, drifts, jumps, rate: float) -> typing.Tuple[int, float]:
    s0 = req.market.asset1.s0
    target = req.tolerance * s0
    n_max = 0
    bound = truncation_envelope(s0, req.maturity, drifts, jumps, rate, n_max)
    while bound >= target and n_max < req.max_terms:
        n_max += 1
        bound = truncation_envelope(s0, req.maturity, drifts, jumps, rate, n_max)
    if bound >= target:
        logger.warning("Truncation bound %g above the target %g after %d terms.", bound, target, n_max)
        raise ToleranceError(f"The series needs more than {req.max_terms} terms.", achieved=bound, target=target)
    return max(n_max, 1), bound


def price_call(req: CallPricingRequest) -> PricingBreakdown:
    """
    Prices the call as

        e^(-lambda_i* T) phi(S0 e^(c~_i T), K e^(-r_i T), sigma_i sqrt(T))
        + sum_n int_0^T f_i(t, T; n) phi(x_i(t, T, n), K e^(-r0 t - r1 (T - t)), sqrt(sigma0^2 t + sigma1^2 (T - t))) dt

    where f is the spending-time density at the risk-neutral intensities lambda*, c~_i = -lambda_i* h_i and
    x_i(t, T, n) = S0 kappa_(i,n) e^(c~0 t + c~1 (T - t)) with kappa_(i,n) the product of 1 + h over the n jumps. Only
    starred quantities enter, so the physical intensities do not affect the price.
    """
    shift = resolve_shift(req)
    sigmas = _volatilities(req)
    asset = req.market.asset1
    lambda_star = shift.lambda_star
    jumps = asset.jumps
    drifts = tuple(-lam * h for lam, h in zip(lambda_star, jumps))
    i, maturity = req.start_state, req.maturity

    n_max, bound = _series_order(req, drifts, jumps, max(lambda_star))
    t, weights = sine_squared_rule(maturity, req.quadrature_nodes)
    counts = np.arange(1, n_max + 1)[:, np.newaxis]
    k, odd = counts // 2, counts % 2
    log_kappa = (k + odd) * math.log1p(jumps[i]) + k * math.log1p(jumps[1 - i])
    spot = asset.s0 * np.exp(log_kappa + drifts[0] * t + drifts[1] * (maturity - t))
    assert np.all(spot > 0)
    strike = req.strike * np.exp(-req.market.r0 * t - req.market.r1 * (maturity - t))
    volatility = np.sqrt(sigmas[0] ** 2 * t + sigmas[1] ** 2 * (maturity - t))

    density = np.exp(log_count_kernel(i, counts, t, maturity - t, lambda_star))
    per_n = np.sum(density * bs_kernel(spot, strike, volatility) * weights, axis=1)
    atom = _atom(req, lambda_star, drifts, sigmas)
    price = atom + float(np.sum(per_n))
    per_n.setflags(write=False)
    logger.debug("Call price with %d terms and %d nodes: %r (bound %g).", n_max, req.quadrature_nodes, price, bound)
    return PricingBreakdown(price=price, atom_contribution=atom, per_n_contributions=per_n, truncation_bound=bound,
                            quadrature_nodes_used=req.quadrature_nodes, n_max=n_max, shift=shift)


def price_call_nojump(req: CallPricingRequest) -> float:
    """
    Prices the call on an asset without jumps with one quadrature over the aggregated spending-time density:

        e^(-lambda_i* T) phi(S0, K e^(-r_i T), sigma_i sqrt(T))
        + int_0^T f_i(t, T) phi(S0, K e^(-r0 t - r1 (T - t)), sqrt(sigma0^2 t + sigma1^2 (T - t))) dt
    """
    asset = req.market.asset1
    if asset.jumps != (0.0, 0.0):
        raise DomainError("The no-jump formula needs h0 = h1 = 0 for asset 1.")
    shift = resolve_shift(req)
    sigmas = _volatilities(req)
    lambda_star = shift.lambda_star
    i, maturity = req.start_state, req.maturity

    t, weights = sine_squared_rule(maturity, req.quadrature_nodes)
    strike = req.strike * np.exp(-req.market.r0 * t - req.market.r1 * (maturity - t))
    volatility = np.sqrt(sigmas[0] ** 2 * t + sigmas[1] ** 2 * (maturity - t))
    density = np.exp(log_bessel_kernel(i, t, maturity - t, lambda_star))
    integral = float(np.sum(density * bs_kernel(asset.s0, strike, volatility) * weights))
    return _atom(req, lambda_star, (0.0, 0.0), sigmas) + integral


def call_price_bounds(req: CallPricingRequest) -> typing.Tuple[float, float]:
    """
    :return: The model-free bounds (S0 - K e^(-r_min T))^+ <= price <= S0; the discount factor lies between
    e^(-r_max T) and e^(-r_min T).
    """
    s0 = req.market.asset1.s0
    return max(0.0, s0 - req.strike * math.exp(-min(req.market.rates) * req.maturity)), s0
