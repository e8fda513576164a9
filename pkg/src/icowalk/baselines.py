"""Reference walks used for speed/shape comparisons against the switch walks."""

from __future__ import annotations

from math import comb

import numpy as np

from .coins import HADAMARD_PARAMS, ProcessSpec
from .engine import evolve_process
from .measure import Distribution, distribution, make_distribution, project_order
from .state import Chirality, make_initial_state

__all__ = ["classical_rw_distribution", "hadamard_walk_distribution"]


def classical_rw_distribution(total_steps: int, n0: int = 0) -> Distribution:
    """Symmetric binomial walk: Prob(n0 + T - 2k) = C(T, k) / 2^T."""
    if total_steps < 0:
        raise ValueError(f"step count must be >= 0, got {total_steps}")
    sites = np.array([n0 + total_steps - 2 * k for k in range(total_steps + 1)])
    values = np.array(
        [comb(total_steps, k) / 2.0**total_steps for k in range(total_steps + 1)]
    )
    order = np.argsort(sites)
    return make_distribution(
        sites[order], values[order], origin=n0, normalized=True, total_mass=1.0
    )


def hadamard_walk_distribution(
    total_steps: int, n0: int = 0, phi0: Chirality = Chirality.FORWARD
) -> Distribution:
    """Definite-order walk with the balanced coin, both chiralities summed."""
    initial = make_initial_state(1, [1.0], n0, phi0, total_steps)
    if total_steps == 0:
        return distribution(project_order(initial, 0), normalize=True)
    process = ProcessSpec("hadamard", (HADAMARD_PARAMS,) * total_steps)
    evolved = evolve_process(initial, process)
    # order register is trivial (d = 1), so outcome 0 is the identity
    return distribution(project_order(evolved, 0), normalize=True)
