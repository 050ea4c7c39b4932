"""Concave majorants of random walks: samplers, exact laws and oracles."""
from .core import *  # noqa: F401,F403
from .hull import (Face, HullBatch, Majorant, argmax_decomposition, concave_majorant,  # noqa: F401
                   excursion_decomposition, hull_batch, majorant_from_faces,
                   max_identity_holds, trivial_majorant)
from .lattice import (ConditionedWalkSampler, NestedCompositionSampler,  # noqa: F401
                      conditional_composition_weight, conditioned_trivial_walk,
                      conditioned_walk_given_majorant, face_slope_laws, gf_HKF,
                      majorant_probability, mu_series, sample_nested_compositions,
                      trivial_majorant_probability)
from .poissonfaces import (assemble_walk_from_faces, ewens_pplus_prob, geometric_walks,  # noqa: F401
                           hunt_rhs, sample_face_counts, sample_face_point_process,
                           sample_infinite_majorant, spitzer_compound_poisson_sample)
from .randperm import (composition_prob_cauchy, composition_prob_mc,  # noqa: F401
                       ewens_partition_prob, sample_cycle_lengths, stirling_first)
from .series import BivariateSeries, UnivariateSeries  # noqa: F401
from .transform import (invert_3214, path_transform_3214, theorem1_transform,  # noqa: F401
                        valid_cyclic_shifts)
from .verify import (TestResult, chi_square_test, enumerate_H_F_distribution,  # noqa: F401
                     enumerate_conditional_walks, enumerate_transform_distribution, ks_test)

__version__ = "0.1.0"
