import dataclasses
import typing

from jtd.errors import MeasureError
from jtd.model.params import MarketModel, MeasureShift
from jtd.measure.completion import complete_two_asset_measure
from jtd.measure.family import (change_of_state_measure, drift_residuals, jump_telegraph_measure,
                                single_asset_measure_family)


@dataclasses.dataclass(frozen=True)
class MeasureReport(object):
    """
    Outcome of a measure request: the shift when one exists, how the market was classified, and the residuals of the
    drift conditions per asset and state.
    """
    mode: str
    classification: str
    shift: typing.Optional[MeasureShift] = None
    residuals: typing.Tuple[typing.Tuple[float, float], ...] = ()
    message: str = ''
    error: typing.Optional[MeasureError] = None

    def as_dict(self) -> typing.Dict[str, typing.Any]:
        result = {'mode': self.mode, 'classification': self.classification}
        if self.shift is not None:
            result['shift'] = self.shift.as_dict()
            result['residuals'] = [list(r) for r in self.residuals]
        if self.message:
            result['message'] = self.message
        return result


MODES = ('complete', 'family', 'change-of-state', 'jump-telegraph', 'explicit')


def resolve_measure(market: MarketModel, mode: str, **values) -> MeasureShift:
    """
    :param market: The market.
    :param mode: One of `MODES`.
    :param values: theta0/theta1 for `family`, k0/k1 for `change-of-state`, shift for `explicit`.
    :return: The measure shift.
    """
    if mode == 'complete':
        return complete_two_asset_measure(market)
    if mode == 'family':
        return single_asset_measure_family(market, values['theta0'], values['theta1'])
    if mode == 'change-of-state':
        return change_of_state_measure(market, values['k0'], values['k1'])
    if mode == 'jump-telegraph':
        return jump_telegraph_measure(market)
    if mode == 'explicit':
        return values['shift']
    raise ValueError(f"Unknown measure mode {mode!r}; expected one of {', '.join(MODES)}.")


def describe_measure(market: MarketModel, mode: str, **values) -> MeasureReport:
    """
    Resolves a measure and reports it. Measure errors do not propagate; they become the report's classification.
    """
    try:
        shift = resolve_measure(market, mode, **values)
    except MeasureError as e:
        return MeasureReport(mode=mode, classification=e.classification, message=str(e), error=e)

    classification = 'family' if mode in ('family', 'change-of-state') else 'unique'
    residuals = tuple(drift_residuals(market.regime(m), shift) for m in range(1, len(market.assets) + 1))
    return MeasureReport(mode=mode, classification=classification, shift=shift, residuals=residuals)
