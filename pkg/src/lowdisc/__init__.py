"""lowdisc: scrambled low-discrepancy sequences, exact star-discrepancy
computation, discrepancy bound calculators, and greedy scramble search."""

from .bounds import (CoverParams, JumpPlan, atanassov_star_bound, bracketing_bound,
                     cover_constant_pipeline, crossover_threshold, d2_proof_bound,
                     d3_proof_bound, halton_extreme_bound, inverse_point_count,
                     jump_plan, lifted_atanassov_bound, probability_forms, proof_bound,
                     sqrt_bound, stirling_cover_bound, subsequence_extreme_bound,
                     vdc_star_bound)
from .discrepancy import (DiscrepancyResult, TaParams, WitnessBox, extreme_disc_1d,
                          extreme_disc_1d_exact, scaled_series, scaled_series_values,
                          star_disc_1d, star_disc_1d_exact, star_disc_exact,
                          star_disc_oracle, star_disc_ta, work_budget, work_estimate)
from .errors import BudgetExceededError, ConfigError
from .fileio import (read_config, read_point_set, read_series_csv, write_config,
                     write_point_set, write_series_csv)
from .manifests import (ManifestEntry, ReproductionManifest, load_manifest, reproduce,
                        run_entry)
from .optimizer import (SearchBudget, SearchResult, StageRecord, greedy_search,
                        hammersley_search, inverse_star_search,
                        random_permutation_zero_fixed, search_1d)
from .padic import (PadicDiscResult, ResidueProfile, ceil_log, crt_count_range,
                    meijer_transfer_bound, padic_discrepancy, relabel_sequence,
                    verify_equidistribution)
from .rng import SplitMix64, splitmix64_next, substream_seed
from .sequences import (GOLDEN_RATIO, Permutation, PermPolynomial, PointSet,
                        ScrambleConfig, generate_point_set, generate_values_exact,
                        hammersley_lift, kritzinger_sequence, kritzinger_sequence_exact,
                        kronecker_sequence, radical_inverse, radical_inverse_exact,
                        scrambled_radical_inverse, scrambled_radical_inverse_exact,
                        validate_perm_polynomial)

__version__ = "0.1.0"
