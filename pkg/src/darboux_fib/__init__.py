"""Darboux-deformed continuous Fibonacci functions and their Ermakov-Lewis invariants."""

from .darboux import (
    DeformationParams,
    ScalarField,
    bernoulli_term,
    deformed_solution_quadrature,
    family_potential,
    phi_general,
    riccati_residual,
)
from .errors import (
    DarbouxFibError,
    DomainError,
    EvaluationFailure,
    LengthMismatch,
    OutOfRange,
    PoleEncountered,
    QuadratureFailure,
    SingularPoint,
)
from .ermakov import (
    InvariantReport,
    PinneyInputs,
    ep_residual,
    invariant_closed,
    invariant_profile,
    pinney_solution,
    v_deformed,
    v_sep,
)
from .fibcore import (
    GOLDEN,
    GoldenConstants,
    Parity,
    fc_source_term,
    fib_binet,
    fib_continuous,
    fib_discrete,
    fib_parity,
    fib_parity_derivative,
    log_derivative,
)
from .sequences import (
    DeformedValue,
    ShiftTable,
    darboux_shift,
    deformed_F,
    deformed_G,
    deformed_potential_closed,
    factor_A,
    factor_B,
    shift_even_at_zero,
    shift_table,
)

__version__ = "0.1.0"
