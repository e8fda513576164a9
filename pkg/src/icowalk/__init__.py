"""Discrete-time coined quantum walks with order-controlled coin tossing.

The package simulates walks whose multi-step coin processes are composed
under a quantum-controlled ordering (2-switch and cyclic N-switch), measures
the order register in the Fourier basis, and cross-validates every evolution
against an independent operator-expansion oracle.
"""

from .baselines import classical_rw_distribution, hadamard_walk_distribution
from .checks import (
    check_corollary1,
    check_corollary2,
    check_lemma1,
    check_lemma2,
    check_lemma3,
    check_theorem1,
    check_theorem2,
    check_theorem3,
    ico_uniform_distribution,
    uniform_walk_processes,
)
from .coins import (
    CoinParams,
    ProcessSpec,
    canonical_pair,
    diagonal_coin,
    hadamard_coin,
    load_process_specs,
    random_coin,
    su2_coin,
)
from .engine import (
    apply_coin,
    apply_shift,
    evolve_composition,
    evolve_process,
    left_cyclic,
    step,
)
from .errors import (
    ExpansionSizeError,
    IcoWalkError,
    LatticeSizingError,
    NormalizationError,
    ProcessSpecError,
    ZeroBranchError,
)
from .measure import (
    Distribution,
    FourierVector,
    branch_probability,
    distribution,
    fourier_vector,
    project_coin,
    project_order,
)
from .oracle import (
    OperatorExpansion,
    ShiftTerm,
    apply_expansion,
    commutator_contraction_asymmetry,
    commutator_expansion,
    compose_expansions,
    expand_propagator,
    oracle_distribution,
    verify_expansion_against_engine,
    x_compose,
)
from .report import CheckReport
from .state import (
    Chirality,
    ConditionalState,
    PositionLattice,
    SystemState,
    WalkerDensityMatrix,
    make_initial_state,
    norm_squared,
    walker_density,
)
from .switch import apply_2switch, apply_nswitch

__version__ = "0.1.0"
