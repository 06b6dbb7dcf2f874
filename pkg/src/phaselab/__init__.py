"""Numerical laboratory for Gaussian field statistics on symplectic phase space.

Zero-mean Gaussian measures on the real phase space R^n x R^n, linear
Hamiltonian flows and their liftings to variables and states, and the
normalization map that sends invariant states to density operators and
polynomial variables to Hermitian observables, with exact trace and
Isserlis-moment formulas plus seeded Monte Carlo throughout.
"""

from .correspondence import (
    DensityOperator,
    ScalingStudy,
    T_state,
    T_variable,
    classical_average_exact,
    classical_average_mc,
    h_scaling_study,
    quantum_average,
)
from .config import ConfigError, ExperimentConfig
from .dynamics import (
    FlowOperator,
    complex_flow,
    ensemble_evolve,
    evolve_point,
    heisenberg_lift,
    make_flow,
    poisson_bracket,
    rk4_flow,
    vonneumann_lift,
)
from .gaussian import (
    GaussianState,
    complex_covariance,
    from_complex_covariance,
    is_symplectically_invariant,
    maximally_mixed_state,
    pure_state_covariance,
)
from .phase import (
    BlockOperator,
    PhaseVector,
    apply_J,
    complex_scalar_product,
    complexify,
    from_complex_operator,
    is_s_commuting,
    quadratic_form_eval,
    realify,
    s_commutation_residual,
    symplectic_form,
    symplectic_matrix,
    to_complex_operator,
)
from .streams import spawn_streams, stream
from .variables import PolynomialVariable
from .verify import CheckResult, run_verify

__version__ = "0.1.0"

__all__ = [
    "BlockOperator",
    "CheckResult",
    "ConfigError",
    "DensityOperator",
    "ExperimentConfig",
    "FlowOperator",
    "GaussianState",
    "PhaseVector",
    "PolynomialVariable",
    "ScalingStudy",
    "T_state",
    "T_variable",
    "apply_J",
    "classical_average_exact",
    "classical_average_mc",
    "complex_covariance",
    "complex_flow",
    "complex_scalar_product",
    "complexify",
    "ensemble_evolve",
    "evolve_point",
    "from_complex_covariance",
    "from_complex_operator",
    "h_scaling_study",
    "heisenberg_lift",
    "is_s_commuting",
    "is_symplectically_invariant",
    "make_flow",
    "maximally_mixed_state",
    "poisson_bracket",
    "pure_state_covariance",
    "quadratic_form_eval",
    "quantum_average",
    "realify",
    "rk4_flow",
    "run_verify",
    "s_commutation_residual",
    "spawn_streams",
    "stream",
    "symplectic_form",
    "symplectic_matrix",
    "to_complex_operator",
    "vonneumann_lift",
]
