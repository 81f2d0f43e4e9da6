"""Secrecy rates of Gaussian wiretap channels observed through coarse ADCs.

Core objects: quantizer specs (adc), channel law and transition matrices
(channel), rates and entropy tools (infotheory), positive-rate constructions
(achievability), input-distribution search and optimality audits (optimizer),
self-check suites (verification), and a CLI (cli).
"""

from .achievability import (
    AchievabilityResult,
    ConstructOptions,
    PhaseAlignment,
    QpskBound,
    achieve,
    align_phase,
    apply_power_constraint,
    choose_amplitude,
    construct_positive_rate,
    crossover_probs,
    qpsk_bound,
    reduce_to_symmetric,
    zchannel_limit,
)
from .adc import (
    MAX_LEVELS,
    AdcSpec,
    ComplexAdcPair,
    is_symmetric_one_bit,
    one_bit,
    one_bit_pair,
    quantize,
    shift_thresholds,
)
from .channel import (
    ROW_SUM_TOL,
    UNDERFLOW_FLOOR,
    ComplexGain,
    TransitionMatrix,
    WiretapChannel,
    cell_probability,
    log_q_function,
    output_alphabet,
    q_function,
    rotate_complex_input,
    transition_matrix,
    transition_row,
    transition_rows,
)
from .errors import EqualGainError, SweepExhaustedError, ValidationError
from .infotheory import (
    DiscreteInput,
    RateReport,
    binary_entropy,
    folding_functions,
    gaussian_reference_rates,
    information_density,
    mutual_information,
    one_bit_p2p_capacity,
    secrecy_rate,
    z_rate,
)
from .optimizer import (
    KktReport,
    OptimizeConfig,
    OptimizeResult,
    SupportVerdict,
    check_support_condition,
    decomposition_candidate,
    fold_input,
    folding_gap,
    kkt_check,
    optimize_wyner_rate,
    reverse_rate_optimize,
)
from .verification import SuiteResult, run_verification

__version__ = "0.1.0"

__all__ = [
    "AchievabilityResult",
    "AdcSpec",
    "ComplexAdcPair",
    "ComplexGain",
    "ConstructOptions",
    "DiscreteInput",
    "EqualGainError",
    "KktReport",
    "MAX_LEVELS",
    "OptimizeConfig",
    "OptimizeResult",
    "PhaseAlignment",
    "QpskBound",
    "ROW_SUM_TOL",
    "RateReport",
    "SuiteResult",
    "SupportVerdict",
    "SweepExhaustedError",
    "TransitionMatrix",
    "UNDERFLOW_FLOOR",
    "ValidationError",
    "WiretapChannel",
    "achieve",
    "align_phase",
    "apply_power_constraint",
    "binary_entropy",
    "cell_probability",
    "check_support_condition",
    "choose_amplitude",
    "construct_positive_rate",
    "crossover_probs",
    "decomposition_candidate",
    "fold_input",
    "folding_functions",
    "folding_gap",
    "gaussian_reference_rates",
    "information_density",
    "is_symmetric_one_bit",
    "kkt_check",
    "log_q_function",
    "mutual_information",
    "one_bit",
    "one_bit_p2p_capacity",
    "one_bit_pair",
    "optimize_wyner_rate",
    "output_alphabet",
    "q_function",
    "qpsk_bound",
    "quantize",
    "reduce_to_symmetric",
    "reverse_rate_optimize",
    "rotate_complex_input",
    "run_verification",
    "secrecy_rate",
    "shift_thresholds",
    "transition_matrix",
    "transition_row",
    "transition_rows",
    "z_rate",
    "zchannel_limit",
    "__version__",
]
