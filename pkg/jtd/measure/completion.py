"""
The risk-neutral measure of a two-asset market, obtained state by state from the two drift conditions.
"""
import dataclasses
import logging
import typing

from jtd.errors import ArbitrageError, IncompleteMarketError, NotEquivalentError, ToleranceError
from jtd.model.params import MarketModel, MeasureShift
from jtd.measure.family import drift_residuals

logger = logging.getLogger(__name__)

SINGULAR_TOLERANCE = 1e-12
RESIDUAL_TOLERANCE = 1e-12
AGREEMENT_TOLERANCE = 1e-12

Pair = typing.Tuple[float, float]


@dataclasses.dataclass(frozen=True)
class CompletionInputs(object):
    """
    Per-state determinants of the drift conditions and, when no jump vanishes, the ratios alpha and beta.

    delta_h[i] = sigma_i^(1) h_i^(2) - sigma_i^(2) h_i^(1)
    delta_rc[i] = sigma_i^(1) (r_i - c_i^(2)) - sigma_i^(2) (r_i - c_i^(1))
    alpha[m][i] = (r_i - c_i^(m)) / h_i^(m), beta[m][i] = sigma_i^(m) / h_i^(m)
    """
    delta_h: Pair
    delta_rc: Pair
    sigma_numerator: Pair
    scale: Pair
    alpha: typing.Optional[typing.Tuple[Pair, Pair]] = None
    beta: typing.Optional[typing.Tuple[Pair, Pair]] = None

    def classify(self, state: int) -> str:
        """
        :return: `unique` when the state's system is regular, otherwise `arbitrage` (no solution) or `incomplete`
        (a line of solutions).
        """
        tolerance = SINGULAR_TOLERANCE * self.scale[state]
        if abs(self.delta_h[state]) >= tolerance:
            return 'unique'
        if abs(self.delta_rc[state]) >= tolerance:
            return 'arbitrage'
        return 'incomplete'


def completion_inputs(market: MarketModel) -> CompletionInputs:
    if not market.is_two_asset:
        raise ValueError("Completing the market needs two assets.")
    first, second = market.asset1, market.asset2
    delta_h, delta_rc, numerator, scale = [], [], [], []
    for i in (0, 1):
        r = market.rates[i]
        s1, s2 = first.volatilities[i], second.volatilities[i]
        h1, h2 = first.jumps[i], second.jumps[i]
        rc1, rc2 = r - first.velocities[i], r - second.velocities[i]
        delta_h.append(s1 * h2 - s2 * h1)
        delta_rc.append(s1 * rc2 - s2 * rc1)
        numerator.append(rc1 * h2 - rc2 * h1)
        scale.append(max(1.0, abs(s1), abs(s2), abs(h1), abs(h2), abs(rc1), abs(rc2)) ** 2)

    alpha = beta = None
    if all(h != 0 for h in first.jumps + second.jumps):
        alpha = tuple(tuple((r - c) / h for r, c, h in zip(market.rates, a.velocities, a.jumps))
                      for a in (first, second))
        beta = tuple(tuple(s / h for s, h in zip(a.volatilities, a.jumps)) for a in (first, second))
    return CompletionInputs(delta_h=tuple(delta_h), delta_rc=tuple(delta_rc), sigma_numerator=tuple(numerator),
                            scale=tuple(scale), alpha=alpha, beta=beta)


def solve_alpha_beta(inputs: CompletionInputs, lambdas: Pair) -> typing.Tuple[Pair, Pair]:
    """
    Solves the drift conditions in the ratio form: sigma_i* = (alpha_i^(1) - alpha_i^(2)) / (beta_i^(1) - beta_i^(2))
    and c_i* = lambda_i - (beta_i^(1) alpha_i^(2) - beta_i^(2) alpha_i^(1)) / (beta_i^(1) - beta_i^(2)).

    :return: The pairs (sigma*, c*).
    """
    if inputs.alpha is None or inputs.beta is None:
        raise ValueError("The ratio form needs all jumps nonzero.")
    a1, a2 = inputs.alpha
    b1, b2 = inputs.beta
    sigma_star = tuple((x1 - x2) / (y1 - y2) for x1, x2, y1, y2 in zip(a1, a2, b1, b2))
    c_star = tuple(lam - (y1 * x2 - y2 * x1) / (y1 - y2) for lam, x1, x2, y1, y2 in zip(lambdas, a1, a2, b1, b2))
    return sigma_star, c_star


def _check_agreement(shift: MeasureShift, inputs: CompletionInputs, lambdas: Pair) -> None:
    sigma_star, c_star = solve_alpha_beta(inputs, lambdas)
    for name, ours, theirs in (('sigma*', shift.sigma_star, sigma_star), ('c*', shift.c_star, c_star)):
        for value, other in zip(ours, theirs):
            if abs(value - other) > AGREEMENT_TOLERANCE * max(1.0, abs(value)):
                raise ToleranceError(f"The ratio form gives {name} = {other!r}, the determinant form {value!r}.",
                                     achieved=abs(value - other), target=AGREEMENT_TOLERANCE)


def complete_two_asset_measure(market: MarketModel) -> MeasureShift:
    """
    Solves, in each state i, the drift conditions of both discounted assets

        c_i^(m) - r_i + sigma_i^(m) sigma_i* + lambda_i* h_i^(m) = 0,  m = 1, 2

    by the determinant formulas lambda_i* = delta_rc / delta_h and
    sigma_i* = ((r_i - c_i^(1)) h_i^(2) - (r_i - c_i^(2)) h_i^(1)) / delta_h. The physical intensities only enter
    through c* = lambda - lambda*, so the induced intensities do not depend on them.

    :param market: A two-asset market.
    :return: The unique measure shift.
    :raises ArbitrageError: A state has no solution.
    :raises IncompleteMarketError: A state has infinitely many solutions.
    :raises NotEquivalentError: Some lambda_i* is not positive.
    """
    inputs = completion_inputs(market)
    for state in (0, 1):
        classification = inputs.classify(state)
        if classification == 'arbitrage':
            raise ArbitrageError(f"arbitrage: no risk-neutral measure (state {state})")
        if classification == 'incomplete':
            raise IncompleteMarketError(f"incomplete: infinitely many measures (state {state})")

    lambda_star = tuple(rc / h for rc, h in zip(inputs.delta_rc, inputs.delta_h))
    sigma_star = tuple(num / h for num, h in zip(inputs.sigma_numerator, inputs.delta_h))
    shift = MeasureShift.from_intensities(market.intensities, lambda_star, sigma_star)
    if any(not lam > 0 for lam in lambda_star):
        raise NotEquivalentError(f"measure not equivalent: lambda* = ({lambda_star[0]:g}, {lambda_star[1]:g})")

    for m in (1, 2):
        residuals = drift_residuals(market.regime(m), shift)
        worst = max(abs(r) for r in residuals)
        if worst > RESIDUAL_TOLERANCE * max(inputs.scale):
            raise ToleranceError(f"Drift residual {worst:g} of asset {m} exceeds the tolerance.", achieved=worst,
                                 target=RESIDUAL_TOLERANCE)
    if inputs.alpha is not None:
        _check_agreement(shift, inputs, market.intensities)
    logger.debug("Completed measure: lambda*=(%g, %g), sigma*=(%g, %g).", *lambda_star, *sigma_star)
    return shift
