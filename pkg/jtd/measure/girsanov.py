"""
Parameters of the market under an equivalent measure, and the density of that measure along a path.
"""
import dataclasses
import math
import typing

from jtd.errors import DomainError, NotEquivalentError
from jtd.model.params import MarketModel, MeasureShift, RegimeParams


class SegmentedPath(typing.Protocol):
    horizon: float
    switch_times: typing.Sequence[float]
    regimes: typing.Sequence[int]
    gaussians: typing.Sequence[float]


def check_equivalent(shift: MeasureShift) -> None:
    """
    Raises `NotEquivalentError` unless both induced intensities are positive, i.e. h_i* > -1.
    """
    bad = [f"lambda{i}* = {lam:g}" for i, lam in enumerate(shift.lambda_star) if not lam > 0]
    if bad:
        raise NotEquivalentError(f"measure not equivalent: {', '.join(bad)}")


@dataclasses.dataclass(frozen=True)
class TransformedParams(object):
    """
    An asset under the new measure. `params` carries the intensities lambda*, the drifts c_i + sigma_i sigma_i* and
    the unchanged volatilities and jumps; `compound_jumps` are the jumps (1 + h*)(1 + h) - 1 of the asset weighted by
    the density process.
    """
    params: RegimeParams
    compound_jumps: typing.Tuple[float, float]
    shift: MeasureShift


def girsanov_transform(params: RegimeParams, shift: MeasureShift) -> TransformedParams:
    check_equivalent(shift)
    drifts = tuple(c + s * s_star for c, s, s_star in zip(params.velocities, params.volatilities, shift.sigma_star))
    compound = tuple((1 + h_star) * (1 + h) - 1 for h_star, h in zip(shift.h_star, params.jumps))
    transformed = params.replace(c0=drifts[0], c1=drifts[1], lambda0=shift.lambda0_star, lambda1=shift.lambda1_star)
    return TransformedParams(params=transformed, compound_jumps=compound, shift=shift)


def transform_market(market: MarketModel, shift: MeasureShift) -> MarketModel:
    """
    :return: The market whose law under P is the law of `market` under the measure given by `shift`.
    """
    assets = []
    for m, asset in enumerate(market.assets, start=1):
        drifted = girsanov_transform(market.regime(m), shift).params
        assets.append(asset.replace(c0=drifted.c0, c1=drifted.c1))
    return market.replace(lambda0=shift.lambda0_star, lambda1=shift.lambda1_star, asset1=assets[0],
                          asset2=assets[1] if len(assets) > 1 else None)


def radon_nikodym_eval(shift: MeasureShift, path: SegmentedPath, t: typing.Optional[float] = None) -> float:
    """
    Evaluates the density

        Z(t) = exp(sum c*_j dt_j + sigma*_j sqrt(dt_j) xi_j - sigma*_j^2 dt_j / 2) prod (1 + h*_j)

    along a path, the sum running over holding intervals and the product over switches with j the state left.

    :param shift: The measure shift.
    :param path: A path with its switch times, visited states and one standard normal draw per holding interval.
    :param t: The horizon; must equal the horizon of the path.
    :return: Z(t) > 0.
    """
    check_equivalent(shift)
    if t is not None and t != path.horizon:
        raise DomainError(f"The path is simulated up to {path.horizon}, not {t}.")
    bounds = [0.0, *path.switch_times, path.horizon]
    log_z = 0.0
    for start, end, state, xi in zip(bounds[:-1], bounds[1:], path.regimes, path.gaussians):
        dt = end - start
        sigma = shift.sigma_star[state]
        log_z += shift.c_star[state] * dt + sigma * math.sqrt(dt) * xi - 0.5 * sigma ** 2 * dt
    for state in path.regimes[:-1]:
        log_z += math.log1p(shift.h_star[state])
    return math.exp(log_z)
