from jtd.model.params import AssetParams, Atom, MarketModel, MeasureShift, RegimeParams, State, STATES, check_state
from jtd.model.validation import (Check, ModelError, ValidationReport, Violation, checks, require_valid,
                                  validate_model)
