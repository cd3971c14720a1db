from jtd.errors import (ArbitrageError, DegenerateVolatilityError, DomainError, IncompleteMarketError, MeasureError,
                        NotEquivalentError)
from jtd.measure.completion import CompletionInputs, complete_two_asset_measure, completion_inputs, solve_alpha_beta
from jtd.measure.family import (change_of_state_measure, drift_residuals, jump_telegraph_measure,
                                single_asset_measure_family)
from jtd.measure.girsanov import (TransformedParams, check_equivalent, girsanov_transform, radon_nikodym_eval,
                                  transform_market)
from jtd.measure.martingale import MartingaleReport, check_martingale_drift, check_martingale_exponential
from jtd.measure.report import MODES, MeasureReport, describe_measure, resolve_measure
