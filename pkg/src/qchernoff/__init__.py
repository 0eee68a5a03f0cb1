"""Error probabilities and error exponents for testing between two quantum states.

Exact optimal errors for joint measurements on N copies, fidelity and
relative-entropy bounds, separable per-copy strategies and a reproducible
Monte Carlo simulator to check them.
"""

from .divergence import (ChernoffResult, balance_lambda, chernoff_classical,
                         classical_fidelity, fidelity, golden_section, kl,
                         qrel_entropy, tilted_distribution)
from .errors import (CapExceededError, DimensionMismatchError, DomainError,
                     InvalidStateError, NoSignChangeError, NotHermitianError)
from .jointtest import (ErrorReport, HelstromTest, classical_multinomial_error,
                        commuting_reduction, compositions, error_bounds,
                        helstrom_error, helstrom_test, joint_error_exact,
                        moments_formula, pure_joint_error)
from .matcore import (HermitianSpectrum, hermitian_eig, logm_support, mat_fn,
                      sqrtm_psd, support_pinv_sqrt, tensor_power,
                      tensor_product, trace_norm)
from .septest import (SimReport, Strategy, fidelity_optimal_measurement,
                      likelihood_strategy, pure_strategy, pure_strategy_error,
                      separable_rate, simulate)
from .states import (Povm, as_density_matrix, as_prob_vector, as_pure_state,
                     entanglement_pair, load_state, outcome_distribution,
                     pauli_pair, projector_of, random_density_matrix,
                     random_pure_state, random_unitary, save_state)

__version__ = "0.1.0"

__all__ = [
    'ChernoffResult', 'balance_lambda', 'chernoff_classical',
    'classical_fidelity', 'fidelity', 'golden_section', 'kl', 'qrel_entropy',
    'tilted_distribution', 'CapExceededError', 'DimensionMismatchError',
    'DomainError', 'InvalidStateError', 'NoSignChangeError',
    'NotHermitianError', 'ErrorReport', 'HelstromTest',
    'classical_multinomial_error', 'commuting_reduction', 'compositions',
    'error_bounds', 'helstrom_error', 'helstrom_test', 'joint_error_exact',
    'moments_formula', 'pure_joint_error', 'HermitianSpectrum',
    'hermitian_eig', 'logm_support', 'mat_fn', 'sqrtm_psd',
    'support_pinv_sqrt', 'tensor_power', 'tensor_product', 'trace_norm',
    'SimReport', 'Strategy', 'fidelity_optimal_measurement',
    'likelihood_strategy', 'pure_strategy', 'pure_strategy_error',
    'separable_rate', 'simulate', 'Povm', 'as_density_matrix',
    'as_prob_vector', 'as_pure_state', 'entanglement_pair', 'load_state',
    'outcome_distribution', 'pauli_pair', 'projector_of',
    'random_density_matrix', 'random_pure_state', 'random_unitary',
    'save_state',
]

