"""expsumlab: exact exponential-sum L-series over finite fields, degree
predictions from topology, and rank-one p-adic radius/index calculus."""

from .expsum import (BudgetExceededError, PowerSumSequence, ScaleCheckReport,
                     VarietySpec, count_points, multiply_terms, power_sum,
                     power_sum_naive, power_sum_table, scaled_degree_check,
                     sym_trace)
from .ffield import (CrossContextError, CyclotomicInt, CyclotomicRat, FieldCtx,
                     FqElem, additive_character, build_field, galois_twist,
                     trace, trace_to_prime)
from .lfun import (LSeries, ReconstructionError, TruncatedSeries, degree,
                   exp_power_sums, log_derivative_check, pade_reconstruct,
                   reconstruct_auto, total_degree)
from .padic import (GaussWeight, NonStabilizedError, PiNumber, RadiusProfile,
                    RadiusSample, RationalFunctionPi, digit_sum, dwork_twist,
                    factorial_valuation, gauss_valuation, radius_profile,
                    robba_index, symbol_sequence, taylor_norm_check)
from .predict import (BettiSpec, ChernSpec, CurveSpec, NewtonSpec,
                      betti_degree, chern_degree, curve_degree,
                      fermat_chern_spec, fermat_discrepancy_report,
                      fermat_torus_support, newton_degree, newton_report,
                      point_in_hull, sl2_degree)
from .verify import CASES, verify_suite

__all__ = [
    "BudgetExceededError", "PowerSumSequence", "ScaleCheckReport",
    "VarietySpec", "count_points", "multiply_terms", "power_sum",
    "power_sum_naive", "power_sum_table", "scaled_degree_check", "sym_trace",
    "CrossContextError", "CyclotomicInt", "CyclotomicRat", "FieldCtx",
    "FqElem", "additive_character", "build_field", "galois_twist", "trace",
    "trace_to_prime",
    "LSeries", "ReconstructionError", "TruncatedSeries", "degree",
    "exp_power_sums", "log_derivative_check", "pade_reconstruct",
    "reconstruct_auto", "total_degree",
    "GaussWeight", "NonStabilizedError", "PiNumber", "RadiusProfile",
    "RadiusSample", "RationalFunctionPi", "digit_sum", "dwork_twist",
    "factorial_valuation", "gauss_valuation", "radius_profile", "robba_index",
    "symbol_sequence", "taylor_norm_check",
    "BettiSpec", "ChernSpec", "CurveSpec", "NewtonSpec", "betti_degree",
    "chern_degree", "curve_degree", "fermat_chern_spec",
    "fermat_discrepancy_report", "fermat_torus_support", "newton_degree",
    "newton_report", "point_in_hull", "sl2_degree",
    "CASES", "verify_suite",
]

__version__ = "0.1.0"
