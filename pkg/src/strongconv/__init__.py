"""Weighted lag-r strong convergence of sequences and Fourier series."""

__version__ = "0.1.0"

from .errors import (ExtensionForbidden, GridMismatch, IndexOutOfConvention, InvalidC,
                     NonSummableTail, NumericOverflow, RejectedSpec, ScheduleTooShort,
                     StrongConvError, UnknownTrace)
from .fourier import (CMetric, DecayBound, LpMetric, TrigSeries, condition_iv_functional,
                      dl2_group_sums, dl_functional, dlp2_sufficiency_check, fourier_norm_chain,
                      grouped_pair, partial_sums, s_lambda_r_functional, s_lambda_r_norm,
                      sigma_deviation, thm_c2_remainder)
from .report import AnalysisReport
from .results import Estimate, FunctionalTrace, InequalityCheck
from .sequences import (ConstantTail, InversePower, NumSequence, ZeroTail, basis_vector,
                        bv_norm, c_lambda_norm, cr_norm, lemma1_bridge_bound, lemma1_condition,
                        norm_chain_check, r_factor_inequality_check, schauder_coefficients,
                        schauder_remainder, schauder_remainder_norm, sigma_mean, strong_variation,
                        sup_norm, telescoped_recover, trace_functional)
from .weights import Explicit, LambdaWeights, Logarithmic, Power, build_lambda, lambda_at
