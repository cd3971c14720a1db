from jtd.errors import (ArbitrageError, DegenerateVolatilityError, DomainError, IncompleteMarketError, MeasureError,
                        NotEquivalentError, ToleranceError)
