"""
Risk-neutral measures of a one-asset market. With one risky asset and a switching regime the market is incomplete:
any positive intensities theta_0, theta_1 give a martingale measure.
"""
import logging
import typing

from jtd.errors import DegenerateVolatilityError, DomainError, MeasureError, NotEquivalentError, ToleranceError
from jtd.model.params import MarketModel, MeasureShift, RegimeParams

logger = logging.getLogger(__name__)

RESIDUAL_TOLERANCE = 1e-12

Market = typing.Union[MarketModel, RegimeParams]


def _regime(market: Market) -> RegimeParams:
    return market.regime(1) if isinstance(market, MarketModel) else market


def drift_residuals(params: RegimeParams, shift: MeasureShift) -> typing.Tuple[float, float]:
    """
    Residuals of c_i - r_i + sigma_i sigma_i* + lambda_i* h_i = 0, which makes the discounted asset a martingale
    under the shifted measure.
    """
    return tuple(c - r + s * s_star + lam_star * h for c, r, s, s_star, lam_star, h in
                 zip(params.velocities, params.rates, params.volatilities, shift.sigma_star, shift.lambda_star,
                     params.jumps))


def _check_residuals(params: RegimeParams, shift: MeasureShift) -> None:
    residuals = drift_residuals(params, shift)
    scale = max(1.0, *(abs(v) for v in params.velocities + params.rates + shift.lambda_star))
    worst = max(abs(r) for r in residuals)
    if worst > RESIDUAL_TOLERANCE * scale:
        raise ToleranceError(f"Drift residual {worst:g} exceeds the tolerance.", achieved=worst,
                             target=RESIDUAL_TOLERANCE * scale)


def single_asset_measure_family(market: Market, theta0: float, theta1: float) -> MeasureShift:
    """
    The member of the one-asset family with risk-neutral switching intensities (theta0, theta1):

        c_i* = lambda_i - theta_i,  h_i* = -1 + theta_i / lambda_i,  sigma_i* = (r_i - c_i - h_i theta_i) / sigma_i

    :param market: The market; only asset 1 is used.
    :param theta0: Risk-neutral intensity of leaving state 0.
    :param theta1: Risk-neutral intensity of leaving state 1.
    :return: The measure shift.
    """
    params = _regime(market)
    thetas = (theta0, theta1)
    for i, theta in enumerate(thetas):
        if not theta > 0:
            raise MeasureError(f"theta{i} must be positive, got {theta}.")
    for i, sigma in enumerate(params.volatilities):
        if sigma == 0:
            raise DegenerateVolatilityError(
                f"sigma{i} = 0: the family needs both volatilities; "
                "for a pure jump telegraph asset use jump_telegraph_measure.")
    sigma_star = tuple((r - c - h * theta) / s for r, c, h, theta, s in
                       zip(params.rates, params.velocities, params.jumps, thetas, params.volatilities))
    shift = MeasureShift.from_intensities(params.intensities, thetas, sigma_star)
    _check_residuals(params, shift)
    logger.debug("Family member theta=(%g, %g): sigma*=(%g, %g).", theta0, theta1, *sigma_star)
    return shift


def change_of_state_measure(market: Market, k0: float, k1: float) -> MeasureShift:
    """
    The family member with theta_i = r_i lambda_i / (r_i + k_i).
    """
    params = _regime(market)
    thetas = []
    for i, (r, lam, k) in enumerate(zip(params.rates, params.intensities, (k0, k1))):
        if not r + k > 0:
            raise DomainError(f"r{i} + k{i} must be positive, got {r + k}.")
        thetas.append(r * lam / (r + k))
    return single_asset_measure_family(market, *thetas)


def jump_telegraph_measure(market: Market) -> MeasureShift:
    """
    The unique martingale measure of a pure jump telegraph asset (no volatility): lambda_i* = (r_i - c_i) / h_i.
    """
    params = _regime(market)
    if any(s != 0 for s in params.volatilities):
        raise DomainError("The jump telegraph measure needs sigma0 = sigma1 = 0.")
    for i, h in enumerate(params.jumps):
        if h == 0:
            raise DomainError(f"h{i} = 0: the drift condition cannot be met by changing the intensity.")
    lambda_star = tuple((r - c) / h for r, c, h in zip(params.rates, params.velocities, params.jumps))
    if any(not lam > 0 for lam in lambda_star):
        raise NotEquivalentError(f"measure not equivalent: lambda* = ({lambda_star[0]:g}, {lambda_star[1]:g})")
    shift = MeasureShift.from_intensities(params.intensities, lambda_star, (0.0, 0.0))
    _check_residuals(params, shift)
    return shift
