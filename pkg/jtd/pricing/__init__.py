from jtd.pricing.call import (CallPricingRequest, PricingBreakdown, call_price_bounds, price_call, price_call_nojump,
                              resolve_shift, truncation_envelope)
from jtd.pricing.kernel import bs_kernel
