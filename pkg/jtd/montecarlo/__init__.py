from jtd.montecarlo.estimators import (EstimatorResult, SimulationSummary, estimate, estimate_discounted_payoff,
                                      summarize)
from jtd.montecarlo.paths import (PathBatch, PathRecord, chunk_sizes, simulate_batches, simulate_paths, thread_count,
                                  write_path_dump)
from jtd.montecarlo.payoffs import Functional, create, functionals
