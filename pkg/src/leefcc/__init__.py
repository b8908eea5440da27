"""Function-correcting codes under the Lee metric over Z_m."""
from .codec import (FcEncoder, RedundancyBounds, TauColoring, Verdict,
                    brute_force_optimal_redundancy, build_from_dcode,
                    build_image_encoder, build_local_encoder, cubic_lower_bound,
                    decode_function_value, inject_errors,
                    min_redundancy_by_encoder_search, optimal_encoder,
                    redundancy_bounds, simulate, tau_coloring, verify_fclmc)
from .errors import (BudgetExhausted, CapacityError, ConstructionError,
                     DecodingFault, DimensionError, LeeFCCError,
                     UncorrectableError, VerificationError)
from .functions import (FunctionBall, FunctionSpec, function_ball,
                        function_distance, image_distances, lemma_ij_representative,
                        locality_lambda)
from .lee import (ball_volume, ball_volume_dp, ball_volume_formula, enumerate_ball,
                  lee_distance, lee_weight, vector_weight)
from .matrices import (DistanceMatrix, constant_matrix, full_message_matrix,
                       image_matrix, lee_weight_matrix, message_matrix)
from .search import (BoundReport, IrregularCode, SearchResult, averaging_lower_bound,
                     bound_report, exact_min_length, greedy_construct, gv_upper_bound,
                     hamming_chain_bound, nl_two_2t, plotkin_lower_bound)

__version__ = "0.1.0"
