"""Two-dimensional discrete-time quantum walks with a four-level Grover coin or a single qubit coin."""

from .engine import (
    CoinOperator,
    WalkKind,
    apply_coin,
    evolve,
    grover4,
    hadamard,
    scalar_recurrence_oracle,
    shift_2d,
    shift_axis,
    step,
)
from .entanglement import (
    SupportBasis,
    coin_position_entanglement,
    partial_transpose_x,
    position_density,
    reduced_coin_density,
    von_neumann_entropy,
    xy_negativity,
)
from .equivalence import (
    ResidualReport,
    check_alpha_identities,
    check_beta_mapping,
    check_commutation,
    distribution_distance,
    map_grover_to_alternate,
)
from .hermitian import EigenResult, HermitianMatrix, hermitian_eigenvalues, trace_norm
from .lattice import (
    CoinState,
    ProbabilityDistribution,
    RadiusOverflowError,
    WalkState,
    alternate_initial_coin,
    grover_initial_coin,
    new_state,
    norm_squared,
    origin_probability,
    probability_distribution,
)

__version__ = "0.1.0"
