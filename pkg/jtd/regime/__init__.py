from jtd.errors import DomainError
from jtd.regime.bessel import bessel_i0, bessel_i1, log_bessel_i0, log_bessel_i1
from jtd.regime.counts import SwitchCountDist, switch_count_probs, switch_count_probs_ode, truncation_order
from jtd.regime.sampling import FlowSample, make_rng, sample_spending_times, sample_switch_times, simulate_flow
from jtd.regime.spending import (SpendingTimeDensity, spending_time_density, spending_time_pdf, spending_time_pdf_n,
                                 spending_time_pdf_series)
