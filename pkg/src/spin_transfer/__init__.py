"""Exact simulator of entanglement transfer between spin pairs coupled by
pairwise isotropic exchange."""

from .entanglement import (
    NegativityValue,
    XStateCoeffs,
    negativity,
    negativity_xstate,
    schmidt_angle_from_negativity,
)
from .model import (
    SpinOperators,
    TransferModel,
    closed_form_propagator,
    full_evolution,
    heisenberg_pair,
    pair_propagator,
    spin_operators,
)
from .protocol import (
    MODE_MIXED,
    MODE_PURE_RESET,
    IterationRecord,
    iterate_transfer,
    mode_comparison,
)
from .qla import (
    EigenDecomposition,
    Operator,
    embed_on_subsystems,
    hermitian_eig,
    kron,
    partial_trace,
    partial_transpose,
    propagator,
)
from .qutritmax import (
    FIG3_THETA_GRID,
    InvariantPoint,
    LowerBoundary,
    MaximizationResult,
    SearchBudget,
    extract_lower_boundary,
    fit_I1_of_theta,
    frontier_line,
    invariants,
    max_curve,
    maximize_E12_half_period,
    negativity_at_half_period,
    sample_physical_region,
)
from .transfer import (
    QUBIT_SOURCE_PERIOD,
    QUTRIT_HALF_PERIOD,
    QUTRIT_SOURCE_PERIOD,
    STATE_A,
    STATE_B,
    STATE_C,
    QubitPairState,
    QutritPairState,
    TransferTrace,
    closed_form_rho12_qubit,
    closed_form_rho12_qutrit,
    entanglement_curve,
    evolve_reduced,
    initial_full_state,
    qutrit_closed_form_discrepancy,
)

__all__ = [
    "EigenDecomposition",
    "FIG3_THETA_GRID",
    "InvariantPoint",
    "IterationRecord",
    "LowerBoundary",
    "MaximizationResult",
    "MODE_MIXED",
    "MODE_PURE_RESET",
    "NegativityValue",
    "Operator",
    "QUBIT_SOURCE_PERIOD",
    "QUTRIT_HALF_PERIOD",
    "QUTRIT_SOURCE_PERIOD",
    "QubitPairState",
    "QutritPairState",
    "STATE_A",
    "STATE_B",
    "STATE_C",
    "SearchBudget",
    "SpinOperators",
    "TransferModel",
    "TransferTrace",
    "XStateCoeffs",
    "closed_form_propagator",
    "closed_form_rho12_qubit",
    "closed_form_rho12_qutrit",
    "embed_on_subsystems",
    "entanglement_curve",
    "evolve_reduced",
    "extract_lower_boundary",
    "fit_I1_of_theta",
    "frontier_line",
    "full_evolution",
    "heisenberg_pair",
    "hermitian_eig",
    "initial_full_state",
    "invariants",
    "iterate_transfer",
    "kron",
    "max_curve",
    "maximize_E12_half_period",
    "mode_comparison",
    "negativity",
    "negativity_at_half_period",
    "negativity_xstate",
    "pair_propagator",
    "partial_trace",
    "partial_transpose",
    "propagator",
    "qutrit_closed_form_discrepancy",
    "sample_physical_region",
    "schmidt_angle_from_negativity",
    "spin_operators",
    "__version__",
]

__version__ = "0.1.0"
